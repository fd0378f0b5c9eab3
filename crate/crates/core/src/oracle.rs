//! Brute-force ground truth for small instances: lattice completion by cut
//! enumeration, cover pairs of the dominance order, and exhaustive
//! dimension-two testing. Everything here is deliberately naive.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::grid::GridScene;
use crate::poset::{ElementId, Poset};

pub const COMPLETION_LIMIT: usize = 20;
pub const SUBSET_LIMIT: usize = 12;
pub const DIMENSION_LIMIT: usize = 7;

/// Element subset as a bit mask over element ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementSet(pub u32);

impl ElementSet {
    pub fn contains(self, e: ElementId) -> bool {
        self.0 >> e.0 & 1 == 1
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = ElementId> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1).map(ElementId)
    }
}

/// A pair `(A, B)` with `A⁺ = B` and `B⁻ = A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub lower: ElementSet,
    pub upper: ElementSet,
}

#[derive(Debug, Clone)]
pub struct Completion {
    /// Sorted by `(|lower|, lower)`, so the bottom cut comes first.
    pub cuts: Vec<Cut>,
    /// Order on `cuts` (by index) under `(A,B) ≤ (C,D)` iff `A ⊆ C`.
    pub order: Poset,
    /// Index of the principal cut `({x}⁻, {x}⁺)` for each element.
    pub principal: Vec<usize>,
}

impl Completion {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn index_of(&self, cut: &Cut) -> Option<usize> {
        self.cuts.iter().position(|c| c == cut)
    }
}

fn upper_bounds(p: &Poset, x: ElementSet) -> ElementSet {
    let mut out = 0u32;
    for y in p.elements() {
        if x.iter().all(|a| p.leq(a, y)) {
            out |= 1 << y.0;
        }
    }
    ElementSet(out)
}

fn lower_bounds(p: &Poset, y: ElementSet) -> ElementSet {
    let mut out = 0u32;
    for x in p.elements() {
        if y.iter().all(|b| p.leq(x, b)) {
            out |= 1 << x.0;
        }
    }
    ElementSet(out)
}

fn cut_of(p: &Poset, x: ElementSet) -> Cut {
    let upper = upper_bounds(p, x);
    Cut {
        lower: lower_bounds(p, upper),
        upper,
    }
}

pub fn is_cut(p: &Poset, c: &Cut) -> bool {
    upper_bounds(p, c.lower) == c.upper && lower_bounds(p, c.upper) == c.lower
}

fn down_sets(p: &Poset) -> Vec<ElementSet> {
    // bottom-up: x may join only when everything below it already has
    let mut order: Vec<ElementId> = p.elements().collect();
    order.sort_by_key(|&x| p.elements().filter(|&y| p.lt(y, x)).count());
    let below: Vec<u32> = order
        .iter()
        .map(|&x| {
            p.elements()
                .filter(|&y| p.lt(y, x))
                .fold(0u32, |m, y| m | 1 << y.0)
        })
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u32)];
    while let Some((k, set)) = stack.pop() {
        if k == order.len() {
            out.push(ElementSet(set));
            continue;
        }
        stack.push((k + 1, set));
        if below[k] & !set == 0 {
            stack.push((k + 1, set | 1 << order[k].0));
        }
    }
    out
}

/// Every cut of `p`, ordered by inclusion of lower sets.
pub fn dm_completion(p: &Poset) -> Result<Completion> {
    let n = p.len();
    if n > COMPLETION_LIMIT {
        return Err(Error::TooLargeForOracle {
            size: n,
            limit: COMPLETION_LIMIT,
        });
    }
    let candidates: Vec<ElementSet> = if n <= SUBSET_LIMIT {
        (0..1u32 << n).map(ElementSet).collect()
    } else {
        down_sets(p)
    };
    let mut seen = HashSet::new();
    let mut cuts: Vec<Cut> = candidates
        .into_iter()
        .map(|x| cut_of(p, x))
        .filter(|c| seen.insert(*c))
        .collect();
    cuts.sort_by_key(|c| (c.lower.len(), c.lower));
    let pos: HashMap<Cut, usize> = cuts.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let principal = p
        .elements()
        .map(|x| pos[&cut_of(p, ElementSet(1 << x.0))])
        .collect();
    let m = cuts.len();
    let mut leq = BitMatrix::new(m);
    for i in 0..m {
        for j in 0..m {
            if cuts[i].lower.is_subset(cuts[j].lower) {
                leq.set(i, j);
            }
        }
    }
    let labels = (0..m).map(|i| format!("cut{i}")).collect();
    let order = Poset::from_matrix_unchecked(labels, leq)?;
    Ok(Completion {
        cuts,
        order,
        principal,
    })
}

/// Cover pairs `(lower, upper)` (as indices into `points`) of the dominance
/// order, by checking every triple.
pub fn dominance_covers(points: &[(i64, i64)]) -> Result<BTreeSet<(usize, usize)>> {
    let mut seen = HashSet::new();
    for &(x, y) in points {
        if !seen.insert((x, y)) {
            return Err(Error::DuplicatePoint(x, y));
        }
    }
    let below = |q: usize, p: usize| {
        q != p && points[q].0 <= points[p].0 && points[q].1 <= points[p].1
    };
    let n = points.len();
    let mut out = BTreeSet::new();
    for q in 0..n {
        for p in 0..n {
            if below(q, p) && !(0..n).any(|r| below(q, r) && below(r, p)) {
                out.insert((q, p));
            }
        }
    }
    Ok(out)
}

fn linear_extensions(p: &Poset) -> Vec<Vec<ElementId>> {
    fn extend(p: &Poset, used: &mut Vec<bool>, cur: &mut Vec<ElementId>, out: &mut Vec<Vec<ElementId>>) {
        if cur.len() == p.len() {
            out.push(cur.clone());
            return;
        }
        for x in p.elements() {
            if used[x.0] || p.elements().any(|y| !used[y.0] && p.lt(y, x)) {
                continue;
            }
            used[x.0] = true;
            cur.push(x);
            extend(p, used, cur, out);
            cur.pop();
            used[x.0] = false;
        }
    }
    let mut out = Vec::new();
    extend(p, &mut vec![false; p.len()], &mut Vec::new(), &mut out);
    out
}

/// True iff some pair of linear extensions of `p` intersects to exactly `p`.
///
/// For each first extension the second is forced (comparable pairs keep
/// their order, incomparable pairs are reversed), so the search only has to
/// check whether that forced relation is itself a linear order.
pub fn order_dimension_le2(p: &Poset) -> Result<bool> {
    let n = p.len();
    if n > DIMENSION_LIMIT {
        return Err(Error::TooLargeForOracle {
            size: n,
            limit: DIMENSION_LIMIT,
        });
    }
    for ext in linear_extensions(p) {
        let mut pos = vec![0; n];
        for (i, x) in ext.iter().enumerate() {
            pos[x.0] = i;
        }
        let before = |a: usize, b: usize| {
            if p.comparable(ElementId(a), ElementId(b)) {
                p.lt(ElementId(a), ElementId(b))
            } else {
                pos[b] < pos[a]
            }
        };
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| {
                !before(a, b) || (0..n).all(|c| !before(b, c) || before(a, c))
            })
        });
        if transitive {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Literal pair enumeration over all linear extensions; only for very small inputs.
pub fn order_dimension_le2_pairs(p: &Poset) -> Result<bool> {
    if p.len() > 5 {
        return Err(Error::TooLargeForOracle { size: p.len(), limit: 5 });
    }
    let exts = linear_extensions(p);
    let pos = |e: &Vec<ElementId>| {
        let mut v = vec![0; e.len()];
        for (i, x) in e.iter().enumerate() {
            v[x.0] = i;
        }
        v
    };
    let positions: Vec<Vec<usize>> = exts.iter().map(pos).collect();
    Ok(positions.iter().any(|p1| {
        positions.iter().any(|p2| {
            p.elements().all(|a| {
                p.elements()
                    .all(|b| p.leq(a, b) == (p1[a.0] <= p1[b.0] && p2[a.0] <= p2[b.0]))
            })
        })
    }))
}

/// True iff every pair of elements has a join and a meet.
pub fn is_lattice(p: &Poset) -> bool {
    let elems: Vec<ElementId> = p.elements().collect();
    let least_of = |set: &[ElementId]| set.iter().any(|&x| set.iter().all(|&y| p.leq(x, y)));
    let greatest_of = |set: &[ElementId]| set.iter().any(|&x| set.iter().all(|&y| p.leq(y, x)));
    elems.iter().all(|&a| {
        elems.iter().all(|&b| {
            let ub: Vec<_> = elems.iter().copied().filter(|&x| p.leq(a, x) && p.leq(b, x)).collect();
            let lb: Vec<_> = elems.iter().copied().filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
            least_of(&ub) && greatest_of(&lb)
        })
    })
}

/// Outcome of comparing the dominance order of a scene with the completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub isomorphic: bool,
    pub problems: Vec<String>,
}

/// Checks that the dominance order on all points of `scene` is isomorphic to
/// the completion of `p`, mapping vertices to their principal cuts. With
/// `require_bounds` false, a missing bottom or top cut that is not itself an
/// element of `p` is tolerated.
pub fn completion_equivalence(
    scene: &GridScene,
    p: &Poset,
    require_bounds: bool,
) -> Result<EquivalenceReport> {
    let completion = dm_completion(p)?;
    let mut problems = Vec::new();
    let pts = &scene.points;
    let vertex_pts: Vec<(ElementId, usize)> = pts
        .iter()
        .enumerate()
        .filter_map(|(i, q)| match q.kind {
            crate::grid::PointKind::Vertex(e) => Some((e, i)),
            _ => None,
        })
        .collect();
    if vertex_pts.len() != p.len() {
        problems.push(format!("{} vertices for {} elements", vertex_pts.len(), p.len()));
    }
    let mut image = Vec::with_capacity(pts.len());
    for (i, q) in pts.iter().enumerate() {
        let mut lower = 0u32;
        let mut upper = 0u32;
        for &(e, vi) in &vertex_pts {
            if q.dominates_eq(&pts[vi]) {
                lower |= 1 << e.0;
            }
            if pts[vi].dominates_eq(q) {
                upper |= 1 << e.0;
            }
        }
        let cut = Cut {
            lower: ElementSet(lower),
            upper: ElementSet(upper),
        };
        match completion.index_of(&cut) {
            Some(ci) => {
                if let crate::grid::PointKind::Vertex(e) = q.kind {
                    if completion.principal[e.0] != ci {
                        problems.push(format!("vertex {} maps to a non-principal cut", p.label(e)));
                    }
                }
                image.push(ci);
            }
            None => {
                problems.push(format!("point {i} at ({}, {}) is not a cut", q.x, q.y));
                image.push(usize::MAX);
            }
        }
    }
    let distinct: HashSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() {
        problems.push("two points map to the same cut".into());
    }
    for (ci, cut) in completion.cuts.iter().enumerate() {
        if distinct.contains(&ci) {
            continue;
        }
        let is_element = completion.principal.contains(&ci);
        let is_bound = ci == 0 || ci == completion.len() - 1;
        if require_bounds || is_element || !is_bound {
            problems.push(format!("cut with lower set {:#b} has no point", cut.lower.0));
        }
    }
    if problems.is_empty() {
        for a in 0..pts.len() {
            for b in 0..pts.len() {
                let dom = pts[b].dominates_eq(&pts[a]);
                let lat = completion.order.leq(ElementId(image[a]), ElementId(image[b]));
                if dom != lat {
                    problems.push(format!("order mismatch between points {a} and {b}"));
                }
            }
        }
    }
    Ok(EquivalenceReport {
        isomorphic: problems.is_empty(),
        problems,
    })
}
