//! Track segments of the confluent diagram and checks of its semantics.

use std::collections::{BTreeSet, HashMap};

use crate::geom::{segments_cross, segments_intersect, Pt};
use crate::grid::{GridScene, PointId, PointKind};
use crate::poset::{ElementId, Poset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub scene: GridScene,
    /// `(lower, upper)` point ids, sorted and deduplicated.
    pub segments: Vec<(PointId, PointId)>,
}

impl Diagram {
    pub fn new(scene: GridScene, mut segments: Vec<(PointId, PointId)>) -> Self {
        segments.sort_unstable();
        segments.dedup();
        Diagram { scene, segments }
    }

    pub fn junction_count(&self) -> usize {
        self.scene.junction_count()
    }

    /// Segments drawn on screen: those not touching an invisible bound.
    pub fn rendered_segments(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.segments.iter().copied().filter(|&(a, b)| {
            !self.scene.points[a].kind.is_invisible() && !self.scene.points[b].kind.is_invisible()
        })
    }

    fn pt(&self, id: PointId) -> Pt {
        let p = &self.scene.points[id];
        Pt::new(p.x, p.y)
    }
}

/// Row-by-row stack sweep emitting the cover pairs of the dominance order.
///
/// `top[c]` holds the highest point seen so far in column `c`. Within a row
/// the stack holds the staircase of maximal points among the column tops to
/// the left: rows strictly decrease from bottom to top of the stack. Column
/// `c`'s own top joins the staircase before the point in cell `(c, r)` is
/// connected, so the stack at that moment is exactly the set of maximal
/// points dominated by it.
pub fn sweep_cover_edges(s: &GridScene) -> Diagram {
    let side = s.grid_side.max(0) as usize;
    let mut rows: Vec<Vec<(usize, PointId)>> = vec![Vec::new(); side + 1];
    for (id, p) in s.points.iter().enumerate() {
        rows[p.y as usize].push((p.x as usize, id));
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    let mut top: Vec<Option<PointId>> = vec![None; side + 1];
    let mut segments = Vec::new();
    let mut stack: Vec<PointId> = Vec::new();
    let y_of = |id: PointId| s.points[id].y;

    for (r, row) in rows.iter().enumerate().skip(1) {
        stack.clear();
        let mut next = row.iter().peekable();
        for (c, slot) in top.iter_mut().enumerate().skip(1) {
            if let Some(t) = *slot {
                let ty = y_of(t);
                while stack.last().is_some_and(|&q| y_of(q) <= ty) {
                    stack.pop();
                }
                stack.push(t);
            }
            if let Some(&(_, p)) = next.next_if(|&&(x, _)| x == c) {
                segments.extend(stack.iter().map(|&q| (q, p)));
                *slot = Some(p);
                // every stacked point lies in a row <= r
                stack.clear();
                stack.push(p);
            }
        }
        debug_assert!(next.next().is_none(), "row {r} has a point outside the grid");
    }
    Diagram::new(s.clone(), segments)
}

/// Vertex pairs joined by an upward path whose interior consists of junctions only.
pub fn smooth_adjacency(d: &Diagram) -> BTreeSet<(ElementId, ElementId)> {
    let pts = &d.scene.points;
    let mut out_edges: Vec<Vec<PointId>> = vec![Vec::new(); pts.len()];
    for &(a, b) in &d.segments {
        out_edges[a].push(b);
    }
    let mut result = BTreeSet::new();
    let mut seen = vec![usize::MAX; pts.len()];
    for (src, p) in pts.iter().enumerate() {
        let PointKind::Vertex(a) = p.kind else { continue };
        let mut stack = vec![src];
        seen[src] = src;
        while let Some(u) = stack.pop() {
            for &w in &out_edges[u] {
                if seen[w] == src {
                    continue;
                }
                seen[w] = src;
                match pts[w].kind {
                    PointKind::Vertex(b) => {
                        result.insert((a, b));
                    }
                    PointKind::Junction => stack.push(w),
                    _ => {}
                }
            }
        }
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Check {
    fn from_failures(failures: Vec<String>) -> Self {
        Check {
            passed: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Smooth adjacency equals the cover pairs of the poset, and the
    /// segments are exactly the cover pairs of the dominance order.
    pub covers: Check,
    /// Rendered straight segments meet only at shared endpoints.
    pub planarity: Check,
    /// Every junction has in- and out-degree at least two.
    pub junction_degrees: Check,
    /// Sources are visible from below and sinks from above.
    pub visibility: Check,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }

    pub fn checks(&self) -> [(&'static str, &Check); 4] {
        [
            ("covers", &self.covers),
            ("planarity", &self.planarity),
            ("junction-degrees", &self.junction_degrees),
            ("visibility", &self.visibility),
        ]
    }
}

/// Pairs of rendered segments that meet other than at a shared endpoint.
pub fn crossing_pairs(d: &Diagram) -> Vec<((PointId, PointId), (PointId, PointId))> {
    let mut segs: Vec<(PointId, PointId)> = d.rendered_segments().collect();
    let xmin = |s: &(PointId, PointId)| d.pt(s.0).x.min(d.pt(s.1).x);
    let xmax = |s: &(PointId, PointId)| d.pt(s.0).x.max(d.pt(s.1).x);
    segs.sort_by_key(|s| (xmin(s), *s));
    let mut out = Vec::new();
    for i in 0..segs.len() {
        let hi = xmax(&segs[i]);
        for j in i + 1..segs.len() {
            if xmin(&segs[j]) > hi {
                break;
            }
            let (a, b) = segs[i];
            let (c, e) = segs[j];
            if segments_cross(d.pt(a), d.pt(b), d.pt(c), d.pt(e)) {
                out.push((segs[i], segs[j]));
            }
        }
    }
    out
}

pub fn validate_diagram(d: &Diagram, p: &Poset) -> ValidationReport {
    let pts = &d.scene.points;
    let mut labels_by_element: HashMap<ElementId, String> = HashMap::new();
    for q in pts {
        if let PointKind::Vertex(e) = q.kind {
            labels_by_element.insert(e, q.label.clone().unwrap_or_default());
        }
    }
    let vertex_label = |e: ElementId| labels_by_element[&e].clone();

    let smooth: BTreeSet<(String, String)> = smooth_adjacency(d)
        .into_iter()
        .map(|(a, b)| (vertex_label(a), vertex_label(b)))
        .collect();
    let covers: BTreeSet<(String, String)> = p
        .transitive_reduction()
        .into_iter()
        .map(|(a, b)| (p.label(a).to_owned(), p.label(b).to_owned()))
        .collect();
    let mut failures = Vec::new();
    for (a, b) in smooth.difference(&covers) {
        failures.push(format!("smooth track {a} -> {b} is not a cover"));
    }
    for (a, b) in covers.difference(&smooth) {
        failures.push(format!("cover {a} -> {b} has no smooth track"));
    }
    let dominance: BTreeSet<(PointId, PointId)> = sweep_cover_edges(&d.scene).segments.into_iter().collect();
    let actual: BTreeSet<(PointId, PointId)> = d.segments.iter().copied().collect();
    for (a, b) in actual.difference(&dominance) {
        failures.push(format!("segment {a} -> {b} is not a dominance cover"));
    }
    for (a, b) in dominance.difference(&actual) {
        failures.push(format!("dominance cover {a} -> {b} has no segment"));
    }
    let covers = Check::from_failures(failures);

    let planarity = Check::from_failures(
        crossing_pairs(d)
            .into_iter()
            .map(|(s, t)| format!("segments {s:?} and {t:?} cross"))
            .collect(),
    );

    let mut indeg = vec![0usize; pts.len()];
    let mut outdeg = vec![0usize; pts.len()];
    for &(a, b) in &d.segments {
        outdeg[a] += 1;
        indeg[b] += 1;
    }
    let junction_degrees = Check::from_failures(
        pts.iter()
            .enumerate()
            .filter(|(i, q)| q.kind.is_junction() && (indeg[*i] < 2 || outdeg[*i] < 2))
            .map(|(i, q)| {
                format!(
                    "junction {i} at ({}, {}) has in/out degree {}/{}",
                    q.x, q.y, indeg[i], outdeg[i]
                )
            })
            .collect(),
    );

    // Rotation by 45° maps the vertical rays to the diagonal (±1, ±1) rays here.
    let by_label: HashMap<&str, PointId> = pts
        .iter()
        .enumerate()
        .filter(|(_, q)| q.kind.is_vertex())
        .filter_map(|(i, q)| q.label.as_deref().map(|l| (l, i)))
        .collect();
    let reach = d.scene.grid_side.max(1) + 2;
    let ext = p.extremes();
    let rendered: Vec<(PointId, PointId)> = d.rendered_segments().collect();
    let mut failures = Vec::new();
    let rays = ext
        .minimal
        .iter()
        .map(|&e| (e, -1, "below"))
        .chain(ext.maximal.iter().map(|&e| (e, 1, "above")));
    for (e, dir, side) in rays {
        let Some(&id) = by_label.get(p.label(e)) else {
            failures.push(format!("no vertex for {}", p.label(e)));
            continue;
        };
        let start = d.pt(id);
        let end = Pt::new(start.x + dir * reach, start.y + dir * reach);
        for &(a, b) in &rendered {
            if a == id || b == id {
                continue;
            }
            if segments_intersect(start, end, d.pt(a), d.pt(b)) {
                failures.push(format!(
                    "{} is not visible from {side}: blocked by segment {a} -> {b}",
                    p.label(e)
                ));
                break;
            }
        }
    }
    let visibility = Check::from_failures(failures);

    ValidationReport {
        covers,
        planarity,
        junction_degrees,
        visibility,
    }
}
