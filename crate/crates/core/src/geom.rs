//! Exact integer geometry: orientation, segment intersection, convex hulls.

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

impl Pt {
    pub const fn new(x: i64, y: i64) -> Self {
        Pt { x, y }
    }
}

/// Sign of the cross product `(b - a) × (c - a)`.
pub fn orient(a: Pt, b: Pt, c: Pt) -> i32 {
    let v = (b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128;
    v.signum() as i32
}

fn on_segment(a: Pt, b: Pt, p: Pt) -> bool {
    orient(a, b, p) == 0
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Segments meet somewhere other than a single common endpoint.
///
/// Two segments that share exactly one endpoint are fine unless they also
/// overlap along a common line.
pub fn segments_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let shared = [(a, c), (a, d), (b, c), (b, d)]
        .into_iter()
        .filter(|(p, q)| p == q)
        .count();
    match shared {
        0 => segments_intersect(a, b, c, d),
        1 => {
            let (common, p, q) = if a == c {
                (a, b, d)
            } else if a == d {
                (a, b, c)
            } else if b == c {
                (b, a, d)
            } else {
                (b, a, c)
            };
            // overlap only when collinear and pointing the same way
            orient(common, p, q) == 0
                && (p.x - common.x) as i128 * (q.x - common.x) as i128
                    + (p.y - common.y) as i128 * (q.y - common.y) as i128
                    > 0
        }
        _ => true,
    }
}

/// Convex hull in counter-clockwise order without collinear points.
/// Degenerate inputs yield one or two points.
pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_edges(h: &[Pt]) -> Vec<(Pt, Pt)> {
    match h.len() {
        0 => vec![],
        1 => vec![(h[0], h[0])],
        2 => vec![(h[0], h[1])],
        k => (0..k).map(|i| (h[i], h[(i + 1) % k])).collect(),
    }
}

fn inside_polygon(h: &[Pt], p: Pt) -> bool {
    h.len() >= 3 && (0..h.len()).all(|i| orient(h[i], h[(i + 1) % h.len()], p) >= 0)
}

/// Closed convex hulls of the two point sets share at least one point.
pub fn hulls_intersect(a: &[Pt], b: &[Pt]) -> bool {
    let ha = convex_hull(a);
    let hb = convex_hull(b);
    for &(p, q) in &hull_edges(&ha) {
        for &(r, s) in &hull_edges(&hb) {
            if segments_intersect(p, q, r, s) {
                return true;
            }
        }
    }
    ha.first().is_some_and(|&p| inside_polygon(&hb, p))
        || hb.first().is_some_and(|&p| inside_polygon(&ha, p))
}
