//! Grid placement of a two-dimensional order and insertion of the junction
//! points that complete it to its lattice completion under dominance.

use crate::poset::ElementId;
use crate::realizer::Realizer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    Vertex(ElementId),
    Junction,
    InvisibleBottom,
    InvisibleTop,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::Vertex(_) => "vertex",
            PointKind::Junction => "junction",
            PointKind::InvisibleBottom | PointKind::InvisibleTop => "invisible",
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, PointKind::Vertex(_))
    }

    pub fn is_junction(self) -> bool {
        self == PointKind::Junction
    }

    pub fn is_invisible(self) -> bool {
        matches!(self, PointKind::InvisibleBottom | PointKind::InvisibleTop)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    pub kind: PointKind,
    pub x: i64,
    pub y: i64,
    pub label: Option<String>,
}

impl GridPoint {
    /// `self` dominates-or-equals `other`.
    #[inline]
    pub fn dominates_eq(&self, other: &GridPoint) -> bool {
        self.x >= other.x && self.y >= other.y
    }
}

/// Index of a point inside its scene.
pub type PointId = usize;

/// Points on the integer grid. Vertices come first, in element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridScene {
    pub n: usize,
    /// Side length of the drawing area; coordinates lie in `[1, grid_side]`.
    pub grid_side: i64,
    pub points: Vec<GridPoint>,
}

impl GridScene {
    pub fn vertex_of(&self, e: ElementId) -> PointId {
        debug_assert_eq!(self.points[e.0].kind, PointKind::Vertex(e));
        e.0
    }

    pub fn junction_count(&self) -> usize {
        self.points.iter().filter(|p| p.kind.is_junction()).count()
    }

    pub fn invisible_count(&self) -> usize {
        self.points.iter().filter(|p| p.kind.is_invisible()).count()
    }

    pub fn coords(&self) -> Vec<(i64, i64)> {
        self.points.iter().map(|p| (p.x, p.y)).collect()
    }
}

/// One vertex per element at `(2·pos₁, 2·pos₂)`.
pub fn place_on_grid(r: &Realizer) -> GridScene {
    let n = r.len();
    let points = (0..n)
        .map(|i| {
            let e = ElementId(i);
            GridPoint {
                kind: PointKind::Vertex(e),
                x: 2 * r.pos1(e) as i64,
                y: 2 * r.pos2(e) as i64,
                label: Some(r.labels()[i].clone()),
            }
        })
        .collect();
    GridScene {
        n,
        grid_side: 2 * n as i64 + 1,
        points,
    }
}

/// Lookup tables for the vertex in each even column / row, indexed by coordinate.
struct Lines {
    y_of_col: Vec<i64>,
    x_of_row: Vec<i64>,
}

impl Lines {
    fn new(s: &GridScene) -> Self {
        let side = s.grid_side as usize + 1;
        let mut lines = Lines {
            y_of_col: vec![-1; side],
            x_of_row: vec![-1; side],
        };
        for p in s.points.iter().filter(|p| p.kind.is_vertex()) {
            lines.y_of_col[p.x as usize] = p.y;
            lines.x_of_row[p.y as usize] = p.x;
        }
        lines
    }

    #[inline]
    fn junction_at(&self, i: i64, j: i64) -> bool {
        let (iu, ju) = (i as usize, j as usize);
        self.y_of_col[iu - 1] < j - 1
            && self.y_of_col[iu + 1] > j + 1
            && self.x_of_row[ju - 1] < i - 1
            && self.x_of_row[ju + 1] > i + 1
    }
}

/// The four-condition junction test at odd cell `(i, j)` of a placed scene.
pub fn junction_condition(s: &GridScene, i: i64, j: i64) -> bool {
    let n = s.n as i64;
    if n < 2 || i % 2 == 0 || j % 2 == 0 || i < 3 || j < 3 || i > 2 * n - 1 || j > 2 * n - 1 {
        return false;
    }
    Lines::new(s).junction_at(i, j)
}

/// Adds junctions at every odd cell meeting the four conditions, plus the
/// invisible bottom (absent a least element) and top (absent a greatest).
pub fn insert_junctions(s: &GridScene) -> GridScene {
    let mut out = s.clone();
    out.points.retain(|p| p.kind.is_vertex());
    let n = s.n as i64;
    if n == 0 {
        return out;
    }
    let lines = Lines::new(&out);
    let mut j = 3;
    while j < 2 * n {
        let mut i = 3;
        while i < 2 * n {
            if lines.junction_at(i, j) {
                out.points.push(GridPoint {
                    kind: PointKind::Junction,
                    x: i,
                    y: j,
                    label: None,
                });
            }
            i += 2;
        }
        j += 2;
    }
    if lines.y_of_col[2] != 2 {
        out.points.push(GridPoint {
            kind: PointKind::InvisibleBottom,
            x: 1,
            y: 1,
            label: None,
        });
    }
    let top = 2 * n;
    if lines.y_of_col[top as usize] != top {
        out.points.push(GridPoint {
            kind: PointKind::InvisibleTop,
            x: top + 1,
            y: top + 1,
            label: None,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: &GridScene, kind: PointKind) -> Vec<(i64, i64)> {
        s.points
            .iter()
            .filter(|p| p.kind == kind)
            .map(|p| (p.x, p.y))
            .collect()
    }

    fn vertex_at(s: &GridScene, label: &str) -> (i64, i64) {
        let p = s.points.iter().find(|p| p.label.as_deref() == Some(label)).unwrap();
        (p.x, p.y)
    }

    #[test]
    fn placement_examples() {
        let r = Realizer::from_orders(&["a", "b", "c", "d"], &["b", "a", "d", "c"]).unwrap();
        let s = place_on_grid(&r);
        assert_eq!(vertex_at(&s, "a"), (2, 4));
        assert_eq!(vertex_at(&s, "b"), (4, 2));
        assert_eq!(vertex_at(&s, "c"), (6, 8));
        assert_eq!(vertex_at(&s, "d"), (8, 6));
        assert_eq!(s.points.len(), 4);

        let s = place_on_grid(&Realizer::from_orders(&["x"], &["x"]).unwrap());
        assert_eq!(vertex_at(&s, "x"), (2, 2));

        let s = place_on_grid(&Realizer::from_orders(&["a", "b"], &["b", "a"]).unwrap());
        assert_eq!(vertex_at(&s, "a"), (2, 4));
        assert_eq!(vertex_at(&s, "b"), (4, 2));
    }

    #[test]
    fn k22_junction_and_bounds() {
        let r = Realizer::from_orders(&["a", "b", "c", "d"], &["b", "a", "d", "c"]).unwrap();
        let s = insert_junctions(&place_on_grid(&r));
        assert_eq!(xy(&s, PointKind::Junction), vec![(5, 5)]);
        assert_eq!(xy(&s, PointKind::InvisibleBottom), vec![(1, 1)]);
        assert_eq!(xy(&s, PointKind::InvisibleTop), vec![(9, 9)]);
    }

    #[test]
    fn chain_gets_nothing() {
        let r = Realizer::from_orders(&["x", "y", "z"], &["x", "y", "z"]).unwrap();
        let s = insert_junctions(&place_on_grid(&r));
        assert_eq!(s.points.len(), 3);
    }

    #[test]
    fn antichain_gets_bounds_only() {
        let r = Realizer::from_orders(&["a", "b"], &["b", "a"]).unwrap();
        let s = insert_junctions(&place_on_grid(&r));
        assert_eq!(s.junction_count(), 0);
        assert_eq!(xy(&s, PointKind::InvisibleBottom), vec![(1, 1)]);
        assert_eq!(xy(&s, PointKind::InvisibleTop), vec![(5, 5)]);
    }

    #[test]
    fn one_sided_bounds() {
        // least element x below an antichain {a, b}
        let r = Realizer::from_orders(&["x", "a", "b"], &["x", "b", "a"]).unwrap();
        let s = insert_junctions(&place_on_grid(&r));
        assert_eq!(s.invisible_count(), 1);
        assert_eq!(xy(&s, PointKind::InvisibleTop), vec![(7, 7)]);
    }

    #[test]
    fn empty_scene() {
        let r = Realizer::from_orders::<&str>(&[], &[]).unwrap();
        assert!(insert_junctions(&place_on_grid(&r)).points.is_empty());
    }
}
