//! Two-dimensional realizers: recognition via transitive orientation of the
//! incomparability graph, and the intersection order of two linear orders.

use std::collections::HashMap;
use std::fmt;

use crate::bits::{BitMatrix, Ones};
use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset};

/// A pair of linear orders over the same labels.
///
/// Element ids index `labels`; `order1`/`order2` list ids from bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizer {
    labels: Vec<String>,
    order1: Vec<usize>,
    order2: Vec<usize>,
    pos1: Vec<usize>,
    pos2: Vec<usize>,
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (p, &e) in order.iter().enumerate() {
        pos[e] = p;
    }
    pos
}

impl Realizer {
    /// Builds from two label sequences. Element ids follow the order of `l1`.
    pub fn from_orders<S: AsRef<str>>(l1: &[S], l2: &[S]) -> Result<Self> {
        let labels: Vec<String> = l1.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if l2.len() != labels.len() {
            return Err(Error::MismatchedElementSets);
        }
        let mut seen = vec![false; labels.len()];
        let mut order2 = Vec::with_capacity(labels.len());
        for s in l2 {
            let &i = index.get(s.as_ref()).ok_or(Error::MismatchedElementSets)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::MismatchedElementSets);
            }
            order2.push(i);
        }
        let order1: Vec<usize> = (0..labels.len()).collect();
        Ok(Self::from_parts(labels, order1, order2))
    }

    fn from_parts(labels: Vec<String>, order1: Vec<usize>, order2: Vec<usize>) -> Self {
        let pos1 = positions(&order1);
        let pos2 = positions(&order2);
        Realizer {
            labels,
            order1,
            order2,
            pos1,
            pos2,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// 1-based position of `e` in the first order.
    pub fn pos1(&self, e: ElementId) -> usize {
        self.pos1[e.0] + 1
    }

    /// 1-based position of `e` in the second order.
    pub fn pos2(&self, e: ElementId) -> usize {
        self.pos2[e.0] + 1
    }

    pub fn order1(&self) -> impl Iterator<Item = &str> {
        self.order1.iter().map(|&i| self.labels[i].as_str())
    }

    pub fn order2(&self) -> impl Iterator<Item = &str> {
        self.order2.iter().map(|&i| self.labels[i].as_str())
    }

    /// The intersection order: `a ≤ b` iff `a` precedes-or-equals `b` in both orders.
    pub fn to_poset(&self) -> Poset {
        let n = self.len();
        let mut leq = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.pos1[a] <= self.pos1[b] && self.pos2[a] <= self.pos2[b] {
                    leq.set(a, b);
                }
            }
        }
        Poset::from_matrix_unchecked(self.labels.clone(), leq)
            .expect("realizer labels are unique")
    }
}

impl fmt::Display for Realizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order1().collect::<Vec<_>>().join(" "))?;
        writeln!(f, "{}", self.order2().collect::<Vec<_>>().join(" "))
    }
}

/// Parses the two-line realizer text format.
pub fn parse_realizer(text: &str) -> Result<Realizer> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if lines.len() != 2 {
        return Err(Error::Format {
            line: lines.get(2).map_or(text.lines().count().max(1), |(i, _)| i + 1),
            message: format!("expected exactly two permutation lines, found {}", lines.len()),
        });
    }
    let l1: Vec<&str> = lines[0].1.split_whitespace().collect();
    let l2: Vec<&str> = lines[1].1.split_whitespace().collect();
    Realizer::from_orders(&l1, &l2)
}

pub fn poset_from_realizer(r: &Realizer) -> Poset {
    r.to_poset()
}

/// True iff the intersection order of `r` equals `p` (matched by label).
pub fn verify_realizer(p: &Poset, r: &Realizer) -> Result<bool> {
    let q = r.to_poset();
    if p.len() != q.len() || p.labels().iter().any(|l| q.id_of(l).is_none()) {
        return Err(Error::MismatchedElementSets);
    }
    Ok(p.same_order_as(&q))
}

/// Linear extension of the relation in `m` (assumed acyclic apart from the
/// diagonal), smallest index first among available elements.
fn linear_extension(m: &BitMatrix) -> Vec<usize> {
    let n = m.size();
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for b in m.row_ones(a) {
            if a != b {
                indeg[b] += 1;
            }
        }
    }
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&a| indeg[a] == 0).map(std::cmp::Reverse).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(a)) = ready.pop() {
        out.push(a);
        for b in m.row_ones(a) {
            if a != b {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(std::cmp::Reverse(b));
                }
            }
        }
    }
    out
}

/// Transitive orientation of the undirected graph `adj` by successive
/// implication classes. Returns `None` when some implication class contains
/// both orientations of an edge, i.e. the graph is not a comparability graph.
fn transitive_orientation(adj: &BitMatrix) -> Option<BitMatrix> {
    let n = adj.size();
    let words = n.div_ceil(64);
    let mut remaining = adj.clone();
    let mut oriented = BitMatrix::new(n);
    // class membership, row-major (x -> y) and transposed (y -> x)
    let mut class = BitMatrix::new(n);
    let mut class_t = BitMatrix::new(n);
    let mut members: Vec<(usize, usize)> = Vec::new();
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let mut scratch = vec![0u64; words];

    for a in 0..n {
        while let Some(b) = remaining.row_ones(a).next() {
            members.clear();
            queue.clear();
            class.set(a, b);
            class_t.set(b, a);
            members.push((a, b));
            queue.push((a, b));
            let mut ok = true;
            'bfs: while let Some((x, y)) = queue.pop() {
                // (x,y) forces (x,y') for y' adjacent to x but not to y
                for (k, s) in scratch.iter_mut().enumerate() {
                    *s = remaining.row(x)[k] & !remaining.row(y)[k] & !class.row(x)[k];
                }
                for y2 in Ones::new(&scratch) {
                    if y2 == y || class.get(x, y2) {
                        continue;
                    }
                    if class.get(y2, x) {
                        ok = false;
                        break 'bfs;
                    }
                    class.set(x, y2);
                    class_t.set(y2, x);
                    members.push((x, y2));
                    queue.push((x, y2));
                }
                // (x,y) forces (x',y) for x' adjacent to y but not to x
                for (k, s) in scratch.iter_mut().enumerate() {
                    *s = remaining.row(y)[k] & !remaining.row(x)[k] & !class_t.row(y)[k];
                }
                for x2 in Ones::new(&scratch) {
                    if x2 == x || class.get(x2, y) {
                        continue;
                    }
                    if class.get(y, x2) {
                        ok = false;
                        break 'bfs;
                    }
                    class.set(x2, y);
                    class_t.set(y, x2);
                    members.push((x2, y));
                    queue.push((x2, y));
                }
            }
            if !ok {
                return None;
            }
            for &(x, y) in &members {
                class.clear(x, y);
                class_t.clear(y, x);
                oriented.set(x, y);
                remaining.clear(x, y);
                remaining.clear(y, x);
            }
        }
    }
    Some(oriented)
}

/// Finds two linear orders whose intersection is `p`, or reports that the
/// order dimension of `p` exceeds two. The result is always verified.
pub fn realizer_of(p: &Poset) -> Result<Realizer> {
    let n = p.len();
    let leq = p.matrix();
    let mut incomparable = BitMatrix::new(n);
    let mut any = false;
    for a in 0..n {
        for b in 0..n {
            if !leq.get(a, b) && !leq.get(b, a) {
                incomparable.set(a, b);
                any = true;
            }
        }
    }
    let labels = p.labels().to_vec();
    if !any {
        let ext = linear_extension(leq);
        return Ok(Realizer::from_parts(labels, ext.clone(), ext));
    }
    let orient = transitive_orientation(&incomparable).ok_or(Error::DimensionExceedsTwo)?;
    let mut up = leq.clone();
    let mut down = leq.clone();
    for a in 0..n {
        for b in orient.row_ones(a) {
            up.set(a, b);
            down.set(b, a);
        }
    }
    let r = Realizer::from_parts(labels, linear_extension(&up), linear_extension(&down));
    if r.order1.len() != n || r.order2.len() != n || !verify_realizer(p, &r)? {
        return Err(Error::DimensionExceedsTwo);
    }
    Ok(r)
}
