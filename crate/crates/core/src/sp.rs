//! Series-parallel orders: expression parsing, decomposition trees, and the
//! linear-time corner-to-corner layout.

use std::collections::HashSet;
use std::fmt;

use crate::bits::BitMatrix;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::grid::{GridPoint, GridScene, PointKind};
use crate::poset::{ElementId, Poset};

/// Handle to a node inside an [`SpBuilder`] / [`SpTree`] arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeRef(usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpNode {
    Leaf(String),
    Series(NodeRef, NodeRef),
    Parallel(NodeRef, NodeRef),
}

/// Binary decomposition tree. Nodes live in an arena where every child
/// precedes its parent; the root is the last node.
#[derive(Clone, PartialEq, Eq)]
pub struct SpTree {
    nodes: Vec<SpNode>,
}

#[derive(Debug, Default)]
pub struct SpBuilder {
    nodes: Vec<SpNode>,
}

impl SpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, label: impl Into<String>) -> NodeRef {
        self.push(SpNode::Leaf(label.into()))
    }

    pub fn series(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.push(SpNode::Series(a, b))
    }

    pub fn parallel(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.push(SpNode::Parallel(a, b))
    }

    fn push(&mut self, node: SpNode) -> NodeRef {
        self.nodes.push(node);
        NodeRef(self.nodes.len() - 1)
    }

    /// Keeps the nodes reachable from `root`, renumbered in post-order.
    pub fn finish(self, root: NodeRef) -> Result<SpTree> {
        let mut order = Vec::new();
        let mut stack = vec![(root.0, false)];
        while let Some((id, expanded)) = stack.pop() {
            match (&self.nodes[id], expanded) {
                (SpNode::Leaf(_), _) | (_, true) => order.push(id),
                (SpNode::Series(a, b) | SpNode::Parallel(a, b), false) => {
                    stack.push((id, true));
                    stack.push((b.0, false));
                    stack.push((a.0, false));
                }
            }
        }
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::with_capacity(order.len());
        let mut labels = HashSet::new();
        for id in order {
            assert_eq!(new_id[id], usize::MAX, "node {id} is shared between parents");
            let node = match &self.nodes[id] {
                SpNode::Leaf(l) => {
                    if !labels.insert(l.clone()) {
                        return Err(Error::DuplicateLeaf(l.clone()));
                    }
                    SpNode::Leaf(l.clone())
                }
                SpNode::Series(a, b) => SpNode::Series(NodeRef(new_id[a.0]), NodeRef(new_id[b.0])),
                SpNode::Parallel(a, b) => SpNode::Parallel(NodeRef(new_id[a.0]), NodeRef(new_id[b.0])),
            };
            new_id[id] = nodes.len();
            nodes.push(node);
        }
        Ok(SpTree { nodes })
    }
}

impl SpTree {
    pub fn root(&self) -> NodeRef {
        NodeRef(self.nodes.len() - 1)
    }

    pub fn node(&self, r: NodeRef) -> &SpNode {
        &self.nodes[r.0]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Leaf labels from left to right; element ids of the induced poset follow this order.
    pub fn leaves(&self) -> Vec<&str> {
        // post-order numbering lists leaves left to right
        self.nodes
            .iter()
            .filter_map(|n| match n {
                SpNode::Leaf(l) => Some(l.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, SpNode::Leaf(_))).count()
    }

    /// Half-open leaf index range covered by each node.
    fn leaf_ranges(&self) -> Vec<(usize, usize)> {
        let mut ranges: Vec<(usize, usize)> = Vec::with_capacity(self.nodes.len());
        let mut next = 0;
        for n in &self.nodes {
            let r = match n {
                SpNode::Leaf(_) => {
                    next += 1;
                    (next - 1, next)
                }
                SpNode::Series(a, b) | SpNode::Parallel(a, b) => (ranges[a.0].0, ranges[b.0].1),
            };
            ranges.push(r);
        }
        ranges
    }
}

impl fmt::Display for SpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // fully parenthesized, built bottom-up to avoid deep recursion
        let mut text: Vec<String> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let s = match n {
                SpNode::Leaf(l) => l.clone(),
                SpNode::Series(a, b) => format!("({};{})", text[a.0], text[b.0]),
                SpNode::Parallel(a, b) => format!("({}|{})", text[a.0], text[b.0]),
            };
            text.push(s);
        }
        f.write_str(text.last().map_or("", |s| s.as_str()))
    }
}

impl fmt::Debug for SpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpTree({self})")
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    builder: SpBuilder,
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ';' | '|' | '(' | ')')
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<NodeRef> {
        let mut acc = self.term()?;
        while self.peek() == Some(';') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = self.builder.series(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NodeRef> {
        let mut acc = self.factor()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.builder.parallel(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NodeRef> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error(&["';'", "'|'", "')'"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if is_ident_char(c) => {
                let rest = &self.src[self.pos..];
                let len = rest.find(|c| !is_ident_char(c)).unwrap_or(rest.len());
                let label = &rest[..len];
                self.pos += len;
                Ok(self.builder.leaf(label))
            }
            _ => Err(self.error(&["identifier", "'('"])),
        }
    }
}

/// Parses `expr := term {';' term}`, `term := factor {'|' factor}`,
/// `factor := IDENT | '(' expr ')'`. Both operators associate to the left.
pub fn parse_sp(text: &str) -> Result<SpTree> {
    let mut p = Parser {
        src: text,
        pos: 0,
        builder: SpBuilder::new(),
    };
    let root = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error(&["';'", "'|'", "end of input"]));
    }
    p.builder.finish(root)
}

/// The induced order: series puts the whole left part below the right part.
pub fn sp_to_poset(t: &SpTree) -> Poset {
    let labels: Vec<String> = t.leaves().into_iter().map(str::to_owned).collect();
    let mut leq = BitMatrix::identity(labels.len());
    let ranges = t.leaf_ranges();
    for n in &t.nodes {
        if let SpNode::Series(a, b) = n {
            for i in ranges[a.0].0..ranges[a.0].1 {
                for j in ranges[b.0].0..ranges[b.0].1 {
                    leq.set(i, j);
                }
            }
        }
    }
    Poset::from_matrix_unchecked(labels, leq).expect("leaf labels are unique")
}

const NIL: usize = usize::MAX;

/// Singly linked list of point ids threaded through a shared `next` array.
#[derive(Clone, Copy)]
struct PointList {
    head: usize,
    tail: usize,
    len: usize,
}

impl PointList {
    fn single(p: usize) -> Self {
        PointList { head: p, tail: p, len: 1 }
    }

    fn append(self, other: PointList, next: &mut [usize]) -> PointList {
        next[self.tail] = other.head;
        PointList {
            head: self.head,
            tail: other.tail,
            len: self.len + other.len,
        }
    }

    fn iter<'a>(&self, next: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
        let mut cur = self.head;
        let mut left = self.len;
        std::iter::from_fn(move || {
            if left == 0 {
                return None;
            }
            left -= 1;
            let p = cur;
            cur = next[p];
            Some(p)
        })
    }
}

#[derive(Clone, Copy)]
struct BoxState {
    w: i64,
    h: i64,
    minimal: PointList,
    maximal: PointList,
}

/// Lays out the tree bottom-up: leaves take one cell, series boxes meet at
/// the lower-left/upper-right corner (with a junction in the shared corner
/// when both sides have several extremes), parallel boxes meet along the
/// anti-diagonal. Runs in time linear in the tree size.
pub fn sp_layout(t: &SpTree) -> Diagram {
    let count = t.nodes.len();
    let n = t.leaf_count();
    // per point: owning tree node and local coordinates
    let mut owner: Vec<usize> = Vec::with_capacity(2 * n);
    let mut local: Vec<(i64, i64)> = Vec::with_capacity(2 * n);
    let mut is_junction: Vec<bool> = Vec::with_capacity(2 * n);
    let mut next_min: Vec<usize> = Vec::with_capacity(2 * n);
    let mut next_max: Vec<usize> = Vec::with_capacity(2 * n);
    let mut child_offset: Vec<[(i64, i64); 2]> = vec![[(0, 0); 2]; count];
    let mut state: Vec<Option<BoxState>> = vec![None; count];
    let mut segments: Vec<(usize, usize)> = Vec::with_capacity(2 * n);

    let mut new_point = |node: usize, xy: (i64, i64), junction: bool, nm: &mut Vec<usize>, nx: &mut Vec<usize>| {
        owner.push(node);
        local.push(xy);
        is_junction.push(junction);
        nm.push(NIL);
        nx.push(NIL);
        owner.len() - 1
    };

    for (id, node) in t.nodes.iter().enumerate() {
        let st = match node {
            SpNode::Leaf(_) => {
                let p = new_point(id, (0, 0), false, &mut next_min, &mut next_max);
                BoxState {
                    w: 1,
                    h: 1,
                    minimal: PointList::single(p),
                    maximal: PointList::single(p),
                }
            }
            SpNode::Series(a, b) => {
                let sa = state[a.0].take().expect("child laid out");
                let sb = state[b.0].take().expect("child laid out");
                let (w, h) = if sa.maximal.len > 1 && sb.minimal.len > 1 {
                    let j = new_point(id, (sa.w, sa.h), true, &mut next_min, &mut next_max);
                    segments.extend(sa.maximal.iter(&next_max).map(|m| (m, j)));
                    segments.extend(sb.minimal.iter(&next_min).map(|m| (j, m)));
                    child_offset[id] = [(0, 0), (sa.w + 1, sa.h + 1)];
                    (sa.w + sb.w + 1, sa.h + sb.h + 1)
                } else {
                    if sa.maximal.len == 1 {
                        let top = sa.maximal.head;
                        segments.extend(sb.minimal.iter(&next_min).map(|m| (top, m)));
                    } else {
                        let bottom = sb.minimal.head;
                        segments.extend(sa.maximal.iter(&next_max).map(|m| (m, bottom)));
                    }
                    child_offset[id] = [(0, 0), (sa.w, sa.h)];
                    (sa.w + sb.w, sa.h + sb.h)
                };
                BoxState {
                    w,
                    h,
                    minimal: sa.minimal,
                    maximal: sb.maximal,
                }
            }
            SpNode::Parallel(a, b) => {
                let sa = state[a.0].take().expect("child laid out");
                let sb = state[b.0].take().expect("child laid out");
                child_offset[id] = [(0, sb.h), (sa.w, 0)];
                BoxState {
                    w: sa.w + sb.w,
                    h: sa.h + sb.h,
                    minimal: sa.minimal.append(sb.minimal, &mut next_min),
                    maximal: sa.maximal.append(sb.maximal, &mut next_max),
                }
            }
        };
        state[id] = Some(st);
    }

    // absolute offsets, parents before children
    let mut offset = vec![(0i64, 0i64); count];
    let (mut w, mut h) = (0, 0);
    if let Some(root) = count.checked_sub(1) {
        offset[root] = (1, 1);
        let st = state[root].expect("root laid out");
        (w, h) = (st.w, st.h);
    }
    for id in (0..count).rev() {
        if let SpNode::Series(a, b) | SpNode::Parallel(a, b) = &t.nodes[id] {
            let (ox, oy) = offset[id];
            let [(ax, ay), (bx, by)] = child_offset[id];
            offset[a.0] = (ox + ax, oy + ay);
            offset[b.0] = (ox + bx, oy + by);
        }
    }

    // vertices first (leaf order equals creation order), then junctions
    let labels = t.leaves();
    let mut remap = vec![0usize; owner.len()];
    let mut points = Vec::with_capacity(owner.len());
    let mut leaf_no = 0;
    for pass_junctions in [false, true] {
        for p in 0..owner.len() {
            if is_junction[p] != pass_junctions {
                continue;
            }
            let (ox, oy) = offset[owner[p]];
            let (lx, ly) = local[p];
            let (kind, label) = if is_junction[p] {
                (PointKind::Junction, None)
            } else {
                leaf_no += 1;
                (PointKind::Vertex(ElementId(leaf_no - 1)), Some(labels[leaf_no - 1].to_owned()))
            };
            remap[p] = points.len();
            points.push(GridPoint {
                kind,
                x: ox + lx,
                y: oy + ly,
                label,
            });
        }
    }
    let segments = segments.into_iter().map(|(a, b)| (remap[a], remap[b])).collect();
    Diagram::new(
        GridScene {
            n,
            grid_side: w.max(h),
            points,
        },
        segments,
    )
}
