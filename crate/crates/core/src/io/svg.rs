//! SVG 1.1 rendering of drawings.

use std::fmt::Write;

use crate::drawing::{crossing_census, Drawing, Instance, Location, ValidationReport};
use crate::geometry::{Point, DEFAULT_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct SvgStyle {
    /// Width of the canvas in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub margin: f64,
    pub vertex_radius: f64,
    pub stroke_width: f64,
    /// Draw a small square at each proper crossing.
    pub mark_crossings: bool,
    pub label_vertices: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self { width: 480.0, margin: 24.0, vertex_radius: 4.0, stroke_width: 1.5, mark_crossings: true, label_vertices: false }
    }
}

const EDGE: &str = "#333333";
const BAD: &str = "#d62728";
const MARK: &str = "#1f77b4";

struct View {
    lo: Point,
    scale: f64,
    margin: f64,
    height: f64,
}

impl View {
    fn map(&self, p: Point) -> (f64, f64) {
        let x = self.margin + (p.x - self.lo.x) * self.scale;
        // SVG y grows downwards.
        let y = self.height - self.margin - (p.y - self.lo.y) * self.scale;
        (x, y)
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Renders `d`; with a report, offending edges are drawn in red and each
/// located violation gets a red ring.
pub fn render_svg(inst: &Instance, d: &Drawing, style: &SvgStyle, report: Option<&ValidationReport>) -> String {
    let g = &inst.graph;
    let (lo, hi) = d.bounding_box().unwrap_or_default();
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let inner = style.width - 2.0 * style.margin;
    let scale = if span > 0.0 { inner / span } else { 1.0 };
    let height = 2.0 * style.margin + (hi.y - lo.y) * scale;
    let view = View { lo, scale, margin: style.margin, height };

    let mut bad_edges = vec![false; g.edge_count()];
    let mut rings = Vec::new();
    for v in report.map(|r| r.violations.as_slice()).unwrap_or_default() {
        match v.location {
            Location::Edge(e) => bad_edges[e] = true,
            Location::Edges(e, h) => {
                bad_edges[e] = true;
                bad_edges[h] = true;
            }
            Location::VertexEdge(_, e) => bad_edges[e] = true,
            _ => {}
        }
        if let Some(p) = v.point {
            rings.push(p);
        }
    }

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = f(style.width),
        h = f(height)
    );
    let _ = writeln!(s, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(s, r#"  <g fill="none" stroke-linejoin="round" stroke-width="{}">"#, f(style.stroke_width));
    for e in 0..g.edge_count() {
        let pts: Vec<String> = d
            .polyline(g, e)
            .into_iter()
            .map(|p| {
                let (x, y) = view.map(p);
                format!("{},{}", f(x), f(y))
            })
            .collect();
        let color = if bad_edges[e] { BAD } else { EDGE };
        let _ = writeln!(s, r#"    <polyline points="{}" stroke="{color}"/>"#, pts.join(" "));
    }
    let _ = writeln!(s, "  </g>");

    if style.mark_crossings {
        if let Ok(census) = crossing_census(g, d, DEFAULT_TOL) {
            let side = 2.0 * style.vertex_radius;
            let _ = writeln!(s, r#"  <g fill="none" stroke="{MARK}" stroke-width="1">"#);
            for c in &census.crossings {
                let (x, y) = view.map(c.event.point);
                // Align the square with the first segment (y flipped).
                let dir = c.event.seg1.dir();
                let deg = -dir.y.atan2(dir.x).to_degrees();
                let _ = writeln!(
                    s,
                    r#"    <rect x="0" y="0" width="{a}" height="{a}" transform="translate({}, {}) rotate({})"/>"#,
                    f(x),
                    f(y),
                    f(deg),
                    a = f(side)
                );
            }
            let _ = writeln!(s, "  </g>");
        }
    }

    let _ = writeln!(s, r#"  <g fill="white" stroke="{EDGE}" stroke-width="1.5">"#);
    for p in &d.vertices {
        let (x, y) = view.map(*p);
        let _ = writeln!(s, r#"    <circle cx="{}" cy="{}" r="{}"/>"#, f(x), f(y), f(style.vertex_radius));
    }
    let _ = writeln!(s, "  </g>");

    if style.label_vertices {
        let _ = writeln!(s, r#"  <g font-family="sans-serif" font-size="10" fill="{EDGE}">"#);
        for (v, p) in d.vertices.iter().enumerate() {
            let (x, y) = view.map(*p);
            let off = style.vertex_radius + 2.0;
            let _ = writeln!(s, r#"    <text x="{}" y="{}">{v}</text>"#, f(x + off), f(y - off));
        }
        let _ = writeln!(s, "  </g>");
    }

    if !rings.is_empty() {
        let _ = writeln!(s, r#"  <g fill="none" stroke="{BAD}" stroke-width="2">"#);
        for p in rings {
            let (x, y) = view.map(p);
            let _ = writeln!(s, r#"    <circle cx="{}" cy="{}" r="{}"/>"#, f(x), f(y), f(3.0 * style.vertex_radius));
        }
        let _ = writeln!(s, "  </g>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{validate, BendBudget};
    use crate::graph::Graph;

    fn square_with_diagonals(shift: f64) -> (Instance, Drawing) {
        let g = Graph::complete(4);
        let pts = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0 + shift, 1.0), Point::new(0.0, 1.0)];
        (Instance::new(g, BendBudget::straight(6)).unwrap(), Drawing::straight_line(pts, 6))
    }

    #[test]
    fn valid_drawing() {
        let (inst, d) = square_with_diagonals(0.0);
        let svg = render_svg(&inst, &d, &SvgStyle::default(), None);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<rect x").count(), 1);
        assert!(!svg.contains(BAD));
        assert_eq!(svg, render_svg(&inst, &d, &SvgStyle::default(), None));
    }

    #[test]
    fn violations_are_highlighted() {
        let (inst, d) = square_with_diagonals(0.3);
        let report = validate(&inst.graph, &d, &inst.budget, 1e-9).unwrap();
        assert!(!report.is_valid());
        let svg = render_svg(&inst, &d, &SvgStyle::default(), Some(&report));
        assert!(svg.contains(BAD));
    }

    #[test]
    fn empty_graph() {
        let inst = Instance::new(Graph::new(0), BendBudget::straight(0)).unwrap();
        let svg = render_svg(&inst, &Drawing::default(), &SvgStyle::default(), None);
        assert!(svg.contains("<svg") && !svg.contains("<circle"));
    }
}
