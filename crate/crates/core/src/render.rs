//! 45° rotation to an upward drawing, cubic Bézier tracks, SVG and JSON output.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde_json::json;

use crate::diagram::Diagram;
use crate::geom::{hulls_intersect, Pt};
use crate::grid::{PointId, PointKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotatedNode {
    pub kind: PointKind,
    pub label: Option<String>,
    pub u: i64,
    pub v: i64,
}

/// Nodes at `(x − y, x + y)`; `v` increases upward along the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotatedDiagram {
    pub nodes: Vec<RotatedNode>,
    pub segments: Vec<(PointId, PointId)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Vertical distance of the control points from a junction, in rotated grid units.
    pub bezier_offset: f64,
    pub node_radius: f64,
    pub junction_radius: f64,
    pub show_invisible: bool,
    /// Pixels per rotated grid unit.
    pub canvas_scale: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            bezier_offset: 0.5,
            node_radius: 6.0,
            junction_radius: 2.5,
            show_invisible: false,
            canvas_scale: 20.0,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), String> {
        if self.bezier_offset.is_nan() || self.bezier_offset <= 0.0 || self.bezier_offset >= 1.0 {
            return Err(format!("bezier offset must lie in (0, 1), got {}", self.bezier_offset));
        }
        if !self.canvas_scale.is_finite() || self.canvas_scale <= 0.0 {
            return Err(format!("canvas scale must be positive, got {}", self.canvas_scale));
        }
        Ok(())
    }

    /// The offset as an exact fraction `num / den`.
    pub fn offset_ratio(&self) -> Ratio<i64> {
        Ratio::approximate_float(self.bezier_offset).unwrap_or_else(|| Ratio::new(1, 2))
    }
}

pub fn rotate45(d: &Diagram) -> RotatedDiagram {
    RotatedDiagram {
        nodes: d
            .scene
            .points
            .iter()
            .map(|p| RotatedNode {
                kind: p.kind,
                label: p.label.clone(),
                u: p.x - p.y,
                v: p.x + p.y,
            })
            .collect(),
        segments: d.segments.clone(),
    }
}

impl RotatedDiagram {
    fn shown(&self, id: PointId, opts: &RenderOptions) -> bool {
        opts.show_invisible || !self.nodes[id].kind.is_invisible()
    }

    pub fn shown_segments<'a>(&'a self, opts: &'a RenderOptions) -> impl Iterator<Item = (PointId, PointId)> + 'a {
        self.segments
            .iter()
            .copied()
            .filter(move |&(a, b)| self.shown(a, opts) && self.shown(b, opts))
    }

    /// Control points of the curve for `seg` in rotated coordinates, all
    /// scaled by `den` so that an offset of `num / den` is integral.
    /// At a junction the adjacent control point sits vertically off the
    /// junction; at any other endpoint it coincides with the endpoint.
    pub fn control_points_scaled(&self, seg: (PointId, PointId), num: i64, den: i64) -> [Pt; 4] {
        let (lo, hi) = (&self.nodes[seg.0], &self.nodes[seg.1]);
        let p0 = Pt::new(lo.u * den, lo.v * den);
        let p3 = Pt::new(hi.u * den, hi.v * den);
        let p1 = if lo.kind.is_junction() { Pt::new(p0.x, p0.y + num) } else { p0 };
        let p2 = if hi.kind.is_junction() { Pt::new(p3.x, p3.y - num) } else { p3 };
        [p0, p1, p2, p3]
    }

    pub fn control_points(&self, seg: (PointId, PointId), delta: f64) -> [(f64, f64); 4] {
        let (lo, hi) = (&self.nodes[seg.0], &self.nodes[seg.1]);
        let p0 = (lo.u as f64, lo.v as f64);
        let p3 = (hi.u as f64, hi.v as f64);
        let p1 = if lo.kind.is_junction() { (p0.0, p0.1 + delta) } else { p0 };
        let p2 = if hi.kind.is_junction() { (p3.0, p3.1 - delta) } else { p3 };
        [p0, p1, p2, p3]
    }
}

/// Pairs of drawn curves without a common endpoint whose control hulls meet.
pub fn hull_violations(rd: &RotatedDiagram, opts: &RenderOptions) -> Vec<((PointId, PointId), (PointId, PointId))> {
    let r = opts.offset_ratio();
    let (num, den) = (*r.numer(), *r.denom());
    let mut segs: Vec<((PointId, PointId), [Pt; 4])> = rd
        .shown_segments(opts)
        .map(|s| (s, rd.control_points_scaled(s, num, den)))
        .collect();
    let umin = |c: &[Pt; 4]| c.iter().map(|p| p.x).min().unwrap_or(0);
    let umax = |c: &[Pt; 4]| c.iter().map(|p| p.x).max().unwrap_or(0);
    segs.sort_by_key(|(s, c)| (umin(c), *s));
    let mut out = Vec::new();
    for i in 0..segs.len() {
        let (si, ci) = segs[i];
        let hi = umax(&ci);
        for &(sj, cj) in &segs[i + 1..] {
            if umin(&cj) > hi {
                break;
            }
            if si.0 == sj.0 || si.0 == sj.1 || si.1 == sj.0 || si.1 == sj.1 {
                continue;
            }
            if hulls_intersect(&ci, &cj) {
                out.push((si, sj));
            }
        }
    }
    out
}

/// Drawn curves whose control `v` coordinates are not monotone or whose
/// endpoints do not strictly increase in `v`.
pub fn non_monotone_curves(rd: &RotatedDiagram, opts: &RenderOptions) -> Vec<(PointId, PointId)> {
    let r = opts.offset_ratio();
    rd.shown_segments(opts)
        .filter(|&s| {
            let c = rd.control_points_scaled(s, *r.numer(), *r.denom());
            !(c[0].y < c[3].y && c.windows(2).all(|w| w[0].y <= w[1].y))
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_svg(rd: &RotatedDiagram, opts: &RenderOptions) -> String {
    let scale = opts.canvas_scale;
    let margin = 2.0 * opts.node_radius.max(opts.junction_radius) + 4.0;
    let shown: Vec<usize> = (0..rd.nodes.len()).filter(|&i| rd.shown(i, opts)).collect();
    let umin = shown.iter().map(|&i| rd.nodes[i].u).min().unwrap_or(0);
    let umax = shown.iter().map(|&i| rd.nodes[i].u).max().unwrap_or(0);
    let vmin = shown.iter().map(|&i| rd.nodes[i].v).min().unwrap_or(0);
    let vmax = shown.iter().map(|&i| rd.nodes[i].v).max().unwrap_or(0);
    let width = (umax - umin) as f64 * scale + 2.0 * margin;
    let height = (vmax - vmin) as f64 * scale + 2.0 * margin;
    let sx = |u: f64| (u - umin as f64) * scale + margin;
    let sy = |v: f64| (vmax as f64 - v) * scale + margin;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );

    let mut segs: Vec<(PointId, PointId)> = rd.shown_segments(opts).collect();
    let key = |id: PointId| (rd.nodes[id].v, rd.nodes[id].u, id);
    segs.sort_by_key(|&(a, b)| (key(a), key(b)));
    let _ = writeln!(out, r##"<g fill="none" stroke="#333333" stroke-width="1.5">"##);
    for s in segs {
        let [p0, p1, p2, p3] = rd.control_points(s, opts.bezier_offset);
        let _ = writeln!(
            out,
            r#"<path d="M {:.2} {:.2} C {:.2} {:.2}, {:.2} {:.2}, {:.2} {:.2}"/>"#,
            sx(p0.0),
            sy(p0.1),
            sx(p1.0),
            sy(p1.1),
            sx(p2.0),
            sy(p2.1),
            sx(p3.0),
            sy(p3.1)
        );
    }
    let _ = writeln!(out, "</g>");

    let mut nodes = shown.clone();
    nodes.sort_by_key(|&i| key(i));
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="10" text-anchor="middle">"#);
    for i in nodes {
        let nd = &rd.nodes[i];
        let (cx, cy) = (sx(nd.u as f64), sy(nd.v as f64));
        match nd.kind {
            PointKind::Vertex(_) => {
                let _ = writeln!(
                    out,
                    r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="#ffffff" stroke="#000000"/>"##,
                    opts.node_radius
                );
                let _ = writeln!(
                    out,
                    r#"<text x="{cx:.2}" y="{:.2}">{}</text>"#,
                    cy + 3.5,
                    escape(nd.label.as_deref().unwrap_or(""))
                );
            }
            PointKind::Junction => {
                let _ = writeln!(
                    out,
                    r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="#333333"/>"##,
                    opts.junction_radius
                );
            }
            PointKind::InvisibleBottom | PointKind::InvisibleTop => {
                let _ = writeln!(
                    out,
                    r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="none" stroke="#999999" stroke-dasharray="2,2"/>"##,
                    opts.junction_radius
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Machine-readable layout with sorted keys.
pub fn to_json(d: &Diagram) -> String {
    let nodes: Vec<serde_json::Value> = d
        .scene
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut node = json!({
                "id": i,
                "kind": p.kind.name(),
                "grid": [p.x, p.y],
                "rot": [p.x - p.y, p.x + p.y],
            });
            if let Some(l) = &p.label {
                node["label"] = json!(l);
            }
            node
        })
        .collect();
    let segments: Vec<serde_json::Value> = d
        .segments
        .iter()
        .map(|&(a, b)| json!({"from": a, "to": b}))
        .collect();
    let doc = json!({
        "n": d.scene.n,
        "nodes": nodes,
        "segments": segments,
        "stats": {
            "junctions": d.junction_count(),
            "segments": d.segments.len(),
            "gridSide": d.scene.grid_side,
        },
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}
