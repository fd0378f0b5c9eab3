//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use confluent_cli::{run, EXIT_DIMENSION, EXIT_OK};
use confluent_core::bench::{gen_random, gen_random_sp, gen_worstcase};
use confluent_core::diagram::{smooth_adjacency, sweep_cover_edges, validate_diagram, Diagram};
use confluent_core::oracle::{completion_equivalence, dm_completion, dominance_covers, order_dimension_le2};
use confluent_core::pipeline::{draw_realizer, draw_realizer_timed};
use confluent_core::poset::Poset;
use confluent_core::realizer::{realizer_of, Realizer};
use confluent_core::render::{hull_violations, non_monotone_curves, rotate45, RenderOptions};
use confluent_core::sp::{sp_layout, sp_to_poset, NodeRef, SpBuilder, SpTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Small instance of the suite: the order plus the drawing under test.
struct Instance {
    name: String,
    poset: Poset,
    diagram: Diagram,
    has_bounds: bool,
}

fn small_realizers() -> Vec<Realizer> {
    (0..200u64).map(|seed| gen_random(1 + (seed % 9) as usize, seed)).collect()
}

/// Every decomposition tree shape with leaves labeled in order.
fn all_sp_trees(max_leaves: usize) -> Vec<SpTree> {
    #[derive(Clone)]
    enum Shape {
        Leaf,
        Node(bool, Box<Shape>, Box<Shape>),
    }
    let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::Leaf]];
    for k in 2..=max_leaves {
        let mut shapes = Vec::new();
        for left in 1..k {
            for a in &by_size[left] {
                for b in &by_size[k - left] {
                    for series in [true, false] {
                        shapes.push(Shape::Node(series, Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
            }
        }
        by_size.push(shapes);
    }
    fn build(s: &Shape, b: &mut SpBuilder, next: &mut usize) -> NodeRef {
        match s {
            Shape::Leaf => {
                *next += 1;
                b.leaf(format!("v{}", *next - 1))
            }
            Shape::Node(series, l, r) => {
                let l = build(l, b, next);
                let r = build(r, b, next);
                if *series {
                    b.series(l, r)
                } else {
                    b.parallel(l, r)
                }
            }
        }
    }
    by_size
        .iter()
        .flatten()
        .map(|s| {
            let mut b = SpBuilder::new();
            let root = build(s, &mut b, &mut 0);
            b.finish(root).unwrap()
        })
        .collect()
}

fn small_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for (i, r) in small_realizers().into_iter().enumerate() {
        out.push(Instance {
            name: format!("random realizer #{i} ({} | {})", r.order1().collect::<Vec<_>>().join(" "), r.order2().collect::<Vec<_>>().join(" ")),
            poset: r.to_poset(),
            diagram: draw_realizer(&r),
            has_bounds: true,
        });
    }
    for t in all_sp_trees(6) {
        let p = sp_to_poset(&t);
        out.push(Instance {
            name: format!("sp layout {t}"),
            poset: p.clone(),
            diagram: sp_layout(&t),
            has_bounds: false,
        });
        let r = realizer_of(&p).expect("series-parallel orders have dimension two");
        out.push(Instance {
            name: format!("general pipeline {t}"),
            poset: p,
            diagram: draw_realizer(&r),
            has_bounds: true,
        });
    }
    out
}

fn large_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..150u64 {
        let n = 1 + (seed as usize * 7) % 50;
        let r = gen_random(n, seed);
        out.push(Instance {
            name: format!("random n={n} seed={seed}"),
            poset: r.to_poset(),
            diagram: draw_realizer(&r),
            has_bounds: true,
        });
    }
    for n in 1..=12 {
        let r = gen_worstcase(n);
        out.push(Instance {
            name: format!("worst case index {n}"),
            poset: r.to_poset(),
            diagram: draw_realizer(&r),
            has_bounds: true,
        });
    }
    for seed in 0..100u64 {
        let n = 1 + (seed as usize * 13) % 50;
        let t = gen_random_sp(n, seed);
        out.push(Instance {
            name: format!("sp n={n} seed={seed}"),
            poset: sp_to_poset(&t),
            diagram: sp_layout(&t),
            has_bounds: false,
        });
    }
    out
}

fn first_failure(failures: &[String]) -> String {
    match failures.first() {
        Some(f) => format!("{} failing, first: {f}", failures.len()),
        None => String::new(),
    }
}

fn within(budget: Duration, start: Instant) -> (bool, String) {
    let el = start.elapsed();
    (el <= budget, format!("{:.2}s of {}s", el.as_secs_f64(), budget.as_secs()))
}

fn criterion_1(suite: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for inst in suite {
        let eq = completion_equivalence(&inst.diagram.scene, &inst.poset, inst.has_bounds).unwrap();
        if !eq.isomorphic {
            failures.push(format!("{}: {:?}", inst.name, eq.problems));
        }
    }
    let (fast, time) = within(Duration::from_secs(30), start);
    verdict(
        failures.is_empty() && fast,
        format!("{} instances, {time} {}", suite.len(), first_failure(&failures)),
    )
}

fn criterion_2(suite: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for inst in suite {
        let oracle = dominance_covers(&inst.diagram.scene.coords()).unwrap();
        let got: BTreeSet<_> = inst.diagram.segments.iter().copied().collect();
        let swept: BTreeSet<_> = sweep_cover_edges(&inst.diagram.scene).segments.into_iter().collect();
        if got != oracle || swept != oracle {
            failures.push(inst.name.clone());
        }
    }
    let (fast, time) = within(Duration::from_secs(30), start);
    verdict(
        failures.is_empty() && fast,
        format!("{} instances, {time} {}", suite.len(), first_failure(&failures)),
    )
}

fn criterion_3(small: &[Instance], large: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let (mut total, mut sp_failing, mut missing_total) = (0, 0, 0);
    for inst in small.iter().chain(large) {
        total += 1;
        let smooth = smooth_adjacency(&inst.diagram);
        let covers = inst.poset.transitive_reduction();
        if smooth != covers {
            if inst.name.starts_with("sp") {
                sp_failing += 1;
            }
            let extra: Vec<String> = smooth
                .difference(&covers)
                .map(|&(a, b)| format!("{}->{}", inst.poset.label(a), inst.poset.label(b)))
                .collect();
            let missing = covers.difference(&smooth).count();
            missing_total += missing;
            failures.push(format!("{}: extra tracks [{}], {missing} covers missing", inst.name, extra.join(", ")));
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "{total} instances, {sp_failing} series-parallel layouts failing, {missing_total} covers without a track, {}",
            first_failure(&failures)
        ),
    )
}

fn criterion_4(small: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in small {
        let c = dm_completion(&inst.poset).unwrap();
        let ext = inst.poset.extremes();
        let bounds = usize::from(ext.least.is_none()) + usize::from(ext.greatest.is_none());
        let scene = &inst.diagram.scene;
        let expected = c.len() - inst.poset.len() - bounds;
        if scene.junction_count() != expected || (inst.has_bounds && scene.invisible_count() != bounds) {
            failures.push(format!("{}: {} junctions, expected {expected}", inst.name, scene.junction_count()));
        }
    }
    verdict(failures.is_empty(), format!("{} instances {}", small.len(), first_failure(&failures)))
}

fn criterion_5(suite: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in suite {
        let report = validate_diagram(&inst.diagram, &inst.poset);
        for (name, check) in [("planarity", &report.planarity), ("junction degrees", &report.junction_degrees)] {
            if !check.passed {
                failures.push(format!("{} {name}: {}", inst.name, check.failures.join("; ")));
            }
        }
    }
    verdict(failures.is_empty(), format!("{} instances up to n=50 {}", suite.len(), first_failure(&failures)))
}

fn criterion_6(small: &[Instance], large: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for inst in small.iter().chain(large) {
        total += 1;
        let hi = 2 * inst.poset.len() as i64 + 1;
        if let Some(q) = inst
            .diagram
            .scene
            .points
            .iter()
            .find(|q| !(1..=hi).contains(&q.x) || !(1..=hi).contains(&q.y))
        {
            failures.push(format!("{}: point ({}, {}) outside [1, {hi}]", inst.name, q.x, q.y));
        }
    }
    verdict(failures.is_empty(), format!("{total} instances {}", first_failure(&failures)))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let counts: Vec<usize> = [4, 8, 16, 32]
        .iter()
        .map(|&n| draw_realizer(&gen_worstcase(n)).junction_count())
        .collect();
    let ratios: Vec<f64> = counts.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let ok = ratios.iter().all(|r| (3.0..=5.0).contains(r));
    let (fast, time) = within(Duration::from_secs(10), start);
    verdict(ok && fast, format!("junctions {counts:?}, ratios {ratios:.3?}, {time}"))
}

fn median_time(runs: usize, mut f: impl FnMut() -> Duration) -> f64 {
    let mut xs: Vec<f64> = (0..runs).map(|_| f().as_secs_f64()).collect();
    xs.sort_by(f64::total_cmp);
    xs[runs / 2]
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let small = gen_worstcase(256);
    let large = gen_worstcase(512);
    draw_realizer(&small);
    let t256 = median_time(5, || draw_realizer_timed(&small).1.total());
    let t512 = median_time(5, || draw_realizer_timed(&large).1.total());
    let ratio = t512 / t256;
    let (fast, time) = within(Duration::from_secs(60), start);
    verdict(
        ratio <= 5.0 && fast,
        format!("{:.1} ms -> {:.1} ms, ratio {ratio:.2}, {time}", t256 * 1e3, t512 * 1e3),
    )
}

fn labeled_tracks(d: &Diagram, labels: &[String]) -> BTreeSet<(String, String)> {
    smooth_adjacency(d)
        .into_iter()
        .map(|(a, b)| (labels[a.0].clone(), labels[b.0].clone()))
        .collect()
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let n = 1 + (seed % 30) as usize;
        let t = gen_random_sp(n, seed);
        let d = sp_layout(&t);
        let r = realizer_of(&sp_to_poset(&t)).expect("series-parallel orders have dimension two");
        let general = draw_realizer(&r);
        if d.junction_count() != general.junction_count() {
            failures.push(format!("{t}: {} vs {} junctions", d.junction_count(), general.junction_count()));
        }
        // general pipeline ids follow the realizer's first order; compare by label
        if labeled_tracks(&d, sp_to_poset(&t).labels()) != labeled_tracks(&general, r.labels()) {
            failures.push(format!("{t}: smooth adjacency differs"));
        }
    }
    let sizes = [1_000usize, 10_000, 100_000];
    let trees: Vec<SpTree> = sizes.iter().map(|&n| gen_random_sp(n, 7)).collect();
    let times: Vec<f64> = trees
        .iter()
        .map(|t| {
            median_time(3, || {
                let s = Instant::now();
                std::hint::black_box(sp_layout(t));
                s.elapsed()
            })
        })
        .collect();
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
    let linear = ratios.iter().all(|&r| r <= 30.0);
    let (fast, time) = within(Duration::from_secs(60), start);
    verdict(
        failures.is_empty() && linear && fast,
        format!(
            "100 trees agree: {}, layout ms {:?}, ratios {ratios:.2?}, {time} {}",
            failures.is_empty(),
            times.iter().map(|t| (t * 1e5).round() / 100.0).collect::<Vec<_>>(),
            first_failure(&failures)
        ),
    )
}

fn random_poset(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_relations(&labels, &pairs).unwrap()
}

fn cli_exit(p: &Poset) -> i32 {
    let text = p.to_edge_list();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    run(["confluent", "--emit", "csv-stats", "-"], &mut text.as_bytes(), &mut out, &mut err)
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let s3 = Poset::from_relations(
        &["a0", "a1", "a2", "b0", "b1", "b2"],
        &[("a0", "b1"), ("a0", "b2"), ("a1", "b0"), ("a1", "b2"), ("a2", "b0"), ("a2", "b1")],
    )
    .unwrap();
    if cli_exit(&s3) != EXIT_DIMENSION {
        failures.push("S3 not rejected".to_owned());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut dim3, mut dim2) = (0, 0);
    let mut attempts = 0;
    while dim3 < 20 && attempts < 100_000 {
        attempts += 1;
        let n = rng.random_range(5..=7);
        let p = random_poset(n, rng.random_range(0.25..0.6), &mut rng);
        let expected = if order_dimension_le2(&p).unwrap() {
            dim2 += 1;
            EXIT_OK
        } else {
            dim3 += 1;
            EXIT_DIMENSION
        };
        let code = cli_exit(&p);
        if code != expected {
            failures.push(format!("{p:?}: exit {code}, expected {expected}"));
        }
    }
    if dim3 < 20 {
        failures.push(format!("only {dim3} dimension-3 samples found"));
    }
    verdict(
        failures.is_empty(),
        format!("S3 + {dim3} dimension-3 rejected, {dim2} dimension-2 accepted {}", first_failure(&failures)),
    )
}

fn criterion_11(suite: &[Instance]) -> Outcome {
    let opts = RenderOptions::default();
    let mut failures = Vec::new();
    for inst in suite {
        let rd = rotate45(&inst.diagram);
        let hulls = hull_violations(&rd, &opts);
        let curves = non_monotone_curves(&rd, &opts);
        if !hulls.is_empty() || !curves.is_empty() {
            failures.push(format!("{}: {} hull pairs, {} curves", inst.name, hulls.len(), curves.len()));
        }
    }
    verdict(failures.is_empty(), format!("{} instances at delta 0.5 {}", suite.len(), first_failure(&failures)))
}

fn main() {
    // a libtest-style filter argument means another test target was selected
    if std::env::args().skip(1).any(|a| !a.starts_with('-')) {
        return;
    }
    let small = small_suite();
    let large = large_suite();
    let results: Vec<(&str, Outcome)> = vec![
        ("completion equivalence", criterion_1(&small)),
        ("sweep matches dominance covers", criterion_2(&small)),
        ("smooth adjacency equals covers", criterion_3(&small, &large)),
        ("junction minimality", criterion_4(&small)),
        ("planarity and junction degrees", criterion_5(&large)),
        ("grid bound", criterion_6(&small, &large)),
        ("worst-case quadratic junctions", criterion_7()),
        ("quadratic pipeline scaling", criterion_8()),
        ("series-parallel agreement and linearity", criterion_9()),
        ("dimension gate", criterion_10()),
        ("rendering invariants", criterion_11(&large)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failed += 1;
        }
        println!("criterion {:>2} {tag} {name}: {}", i + 1, o.detail.trim_end());
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
