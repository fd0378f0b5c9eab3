//! Instance generators and the phase-timing harness.
//!
//! Random instances use ChaCha8 seeded through `SeedableRng::seed_from_u64`,
//! so a given `(n, seed)` yields the same instance on every platform.

use std::fmt::Write as _;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pipeline::draw_realizer_timed;
use crate::realizer::Realizer;
use crate::sp::{SpBuilder, SpTree};

pub const CSV_HEADER: &str = "n,junctions,segments,ms_phase1,ms_phase2,ms_phase3,ms_total";

/// Identity against a seeded uniform permutation over `e0..e{n-1}`.
pub fn gen_random(n: usize, seed: u64) -> Realizer {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut perm = labels.clone();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Realizer::from_orders(&labels, &perm).expect("a permutation of the labels")
}

/// The quadratic-completion family on `4n + 2` elements labeled `0..=4n+1`,
/// first order the identity.
pub fn gen_worstcase(n: usize) -> Realizer {
    assert!(n >= 1, "family index must be positive");
    let mut seq: Vec<usize> = Vec::with_capacity(4 * n + 2);
    seq.extend((0..=n).map(|k| 3 * n - 2 * k));
    for k in 0..n {
        seq.push(4 * n + 1 - k);
        seq.push(n - 1 - k);
    }
    seq.extend((0..=n).map(|k| 3 * n + 1 - 2 * k));
    let l1: Vec<String> = (0..4 * n + 2).map(|i| i.to_string()).collect();
    let l2: Vec<String> = seq.iter().map(|i| i.to_string()).collect();
    Realizer::from_orders(&l1, &l2).expect("the sequence is a permutation")
}

/// Random decomposition tree with leaves `e0..e{n-1}` in left-to-right order.
pub fn gen_random_sp(n: usize, seed: u64) -> SpTree {
    assert!(n >= 1, "a tree needs at least one leaf");
    enum Task {
        Build(usize),
        Combine(bool),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = SpBuilder::new();
    let mut tasks = vec![Task::Build(n)];
    let mut built = Vec::new();
    let mut next_leaf = 0;
    while let Some(task) = tasks.pop() {
        match task {
            Task::Build(1) => {
                built.push(b.leaf(format!("e{next_leaf}")));
                next_leaf += 1;
            }
            Task::Build(size) => {
                let left = rng.random_range(1..size);
                tasks.push(Task::Combine(rng.random_bool(0.5)));
                tasks.push(Task::Build(size - left));
                tasks.push(Task::Build(left));
            }
            Task::Combine(series) => {
                let rhs = built.pop().expect("right subtree");
                let lhs = built.pop().expect("left subtree");
                built.push(if series { b.series(lhs, rhs) } else { b.parallel(lhs, rhs) });
            }
        }
    }
    let root = built.pop().expect("root");
    b.finish(root).expect("generated labels are unique")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    WorstCase,
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub junctions: usize,
    pub segments: usize,
    pub ms_phase: [f64; 3],
    pub ms_total: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs the pipeline `trials` times per size and reports per-size medians.
/// For the random family, trial `t` uses seed `seed + t`.
pub fn scaling_rows(sizes: &[usize], trials: usize, family: Family) -> Vec<ScalingRow> {
    let trials = trials.max(1);
    sizes
        .iter()
        .map(|&n| {
            let mut cols: [Vec<f64>; 6] = Default::default();
            for t in 0..trials {
                let r = match family {
                    Family::WorstCase => gen_worstcase(n),
                    Family::Random { seed } => gen_random(n, seed.wrapping_add(t as u64)),
                };
                let (d, times) = draw_realizer_timed(&r);
                cols[0].push(d.junction_count() as f64);
                cols[1].push(d.segments.len() as f64);
                cols[2].push(ms(times.phase1));
                cols[3].push(ms(times.phase2));
                cols[4].push(ms(times.phase3));
                cols[5].push(ms(times.total()));
            }
            let [j, s, p1, p2, p3, tot] = cols.map(median);
            ScalingRow {
                n,
                junctions: j.round() as usize,
                segments: s.round() as usize,
                ms_phase: [p1, p2, p3],
                ms_total: tot,
            }
        })
        .collect()
}

/// CSV with [`CSV_HEADER`] and one row per size.
pub fn scaling_report(sizes: &[usize], trials: usize, family: Family) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in scaling_rows(sizes, trials, family) {
        let _ = writeln!(
            out,
            "{},{},{},{:.3},{:.3},{:.3},{:.3}",
            row.n, row.junctions, row.segments, row.ms_phase[0], row.ms_phase[1], row.ms_phase[2], row.ms_total
        );
    }
    out
}
