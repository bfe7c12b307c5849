//! Kernelizations and the lifts that turn a drawing of a kernel back into a
//! drawing of the original instance.

pub mod fen;
pub mod vc;

use std::f64::consts::{FRAC_PI_6, PI};

use crate::drawing::{validate, Drawing, Instance};
use crate::error::{Error, Result};
use crate::geometry::{largest_gap, wedge_distance, Point, Segment};
use crate::graph::{EdgeId, Graph, Removal, VertexId};

/// How a kernel maps back onto the instance it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Recipe {
    pub original: Instance,
    /// Kernel vertex id -> original vertex id.
    pub kernel_to_original: Vec<VertexId>,
    /// Degree-one pruning log, original ids, in removal order.
    pub removal_log: Vec<Removal>,
    pub detail: RecipeDetail,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RecipeDetail {
    Fen {
        /// Removed long paths as original vertex sequences, shortest first.
        long_paths: Vec<Vec<VertexId>>,
    },
    Vc {
        trimmed: Vec<TrimmedMember>,
        /// Set when the instance was rejected; the kernel is then a fixed
        /// no-instance.
        rejected: Option<String>,
    },
}

/// A member removed from a type with two cover neighbors (original ids).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrimmedMember {
    pub vertex: VertexId,
    pub neighbors: (VertexId, VertexId),
}

/// Lifts a drawing of `kernel` to the original instance of `recipe`.
pub fn lift(kernel: &Instance, recipe: &Recipe, d: &Drawing, tol: f64) -> Result<Drawing> {
    match &recipe.detail {
        RecipeDetail::Fen { .. } => fen::lift(kernel, recipe, d, tol),
        RecipeDetail::Vc { .. } => vc::lift(kernel, recipe, d, tol),
    }
}

pub(crate) fn check_kernel_drawing(kernel: &Instance, d: &Drawing, tol: f64) -> Result<()> {
    let report = validate(&kernel.graph, d, &kernel.budget, tol)
        .map_err(|e| Error::InvalidKernelDrawing(e.to_string()))?;
    if !report.is_valid() {
        return Err(Error::InvalidKernelDrawing(report.summary(5)));
    }
    Ok(())
}

/// A partial drawing of the original graph under construction.
pub(crate) struct Canvas<'g> {
    pub g: &'g Graph,
    pub pos: Vec<Option<Point>>,
    pub bends: Vec<Vec<Point>>,
    pub drawn: Vec<bool>,
}

impl<'g> Canvas<'g> {
    /// Starts from the kernel drawing, mapped onto original ids.
    pub fn from_kernel(g: &'g Graph, kernel: &Instance, recipe: &Recipe, d: &Drawing) -> Result<Self> {
        let mut c = Canvas {
            g,
            pos: vec![None; g.vertex_count()],
            bends: vec![Vec::new(); g.edge_count()],
            drawn: vec![false; g.edge_count()],
        };
        if recipe.kernel_to_original.len() != kernel.graph.vertex_count() {
            return Err(Error::Recipe("vertex map does not match the kernel".into()));
        }
        for (k, &v) in recipe.kernel_to_original.iter().enumerate() {
            if v >= g.vertex_count() {
                return Err(Error::Recipe(format!("vertex {v} is not in the original graph")));
            }
            c.pos[v] = Some(d.vertices[k]);
        }
        for (e, &(a, b)) in kernel.graph.edges().iter().enumerate() {
            let (u, v) = (recipe.kernel_to_original[a], recipe.kernel_to_original[b]);
            let oe = g
                .edge_id(u, v)
                .ok_or_else(|| Error::Recipe(format!("kernel edge {u}-{v} is not an original edge")))?;
            let mut pts = d.bends[e].clone();
            if (u < v) != (a < b) {
                pts.reverse();
            }
            c.bends[oe] = pts;
            c.drawn[oe] = true;
        }
        Ok(c)
    }

    pub fn at(&self, v: VertexId) -> Point {
        self.pos[v].expect("vertex placed")
    }

    pub fn polyline(&self, e: EdgeId) -> Vec<Point> {
        let (u, v) = self.g.edge(e);
        let mut pts = vec![self.at(u)];
        pts.extend_from_slice(&self.bends[e]);
        pts.push(self.at(v));
        pts
    }

    /// Segments of all drawn edges, tagged with their edge.
    pub fn segments(&self) -> Vec<(EdgeId, Segment)> {
        let mut out = Vec::new();
        for e in 0..self.g.edge_count() {
            if self.drawn[e] {
                for w in self.polyline(e).windows(2) {
                    out.push((e, Segment::raw(w[0], w[1])));
                }
            }
        }
        out
    }

    /// Placed vertices and all bend points.
    pub fn points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.pos.iter().flatten().copied().collect();
        for e in 0..self.g.edge_count() {
            if self.drawn[e] {
                pts.extend_from_slice(&self.bends[e]);
            }
        }
        pts
    }

    pub fn bbox(&self) -> Option<(Point, Point)> {
        let pts = self.points();
        let first = *pts.first()?;
        Some(pts.iter().fold((first, first), |(lo, hi), p| {
            (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y)))
        }))
    }

    /// Re-inserts pruned vertices, last removed first. Each goes into an
    /// empty wedge at its anchor; roots of pruned trees go beside the drawing.
    pub fn reattach(&mut self, log: &[Removal]) -> Result<()> {
        for r in log.iter().rev() {
            let p = match r.anchor {
                None => {
                    let (lo, hi) = self.bbox().unwrap_or_default();
                    let step = (hi - lo).norm().max(1.0) * 0.25;
                    Point::new(hi.x + step, lo.y)
                }
                Some(a) => self.pendant_spot(a)?,
            };
            self.pos[r.vertex] = Some(p);
            if let Some(a) = r.anchor {
                let e = self
                    .g
                    .edge_id(a, r.vertex)
                    .ok_or_else(|| Error::Recipe(format!("pruned edge {a}-{} is not an original edge", r.vertex)))?;
                self.drawn[e] = true;
            }
        }
        Ok(())
    }

    fn pendant_spot(&self, a: VertexId) -> Result<Point> {
        let pa = self.pos[a].ok_or_else(|| Error::Recipe(format!("anchor {a} is not placed")))?;
        let mut rays = Vec::new();
        let segs = self.segments();
        for &(_, s) in &segs {
            if s.a == pa {
                rays.push((s.b - pa).angle());
            } else if s.b == pa {
                rays.push((s.a - pa).angle());
            }
        }
        let (start, width) = largest_gap(&rays);
        let gamma = (width / 4.0).min(FRAC_PI_6);
        let axis = start + width / 2.0;
        let d1 = Point::from_angle(axis - gamma);
        let d2 = Point::from_angle(axis + gamma);
        let mut reach = f64::INFINITY;
        for &(_, s) in &segs {
            if s.a == pa || s.b == pa {
                continue;
            }
            if let Some(d) = wedge_distance(Segment::raw(s.a - pa, s.b - pa), d1, d2) {
                reach = reach.min(d);
            }
        }
        for q in self.points() {
            if q != pa {
                if let Some(d) = wedge_distance(Segment::raw(q - pa, q - pa), d1, d2) {
                    reach = reach.min(d);
                }
            }
        }
        let (lo, hi) = self.bbox().unwrap_or_default();
        let nominal = (hi - lo).norm().max(1e-3) * 0.1;
        let r = (reach / 2.0).min(nominal);
        if !(r > 0.0) || width < PI * 1e-12 {
            return Err(Error::Geometry(format!("no room to re-attach a vertex at {a}")));
        }
        Ok(pa + Point::from_angle(axis) * r)
    }

    pub fn into_drawing(self) -> Result<Drawing> {
        let mut vertices = Vec::with_capacity(self.pos.len());
        for (v, p) in self.pos.into_iter().enumerate() {
            vertices.push(p.ok_or_else(|| Error::Recipe(format!("vertex {v} was never placed")))?);
        }
        if let Some(e) = self.drawn.iter().position(|d| !d) {
            let (u, v) = self.g.edge(e);
            return Err(Error::Recipe(format!("edge {u}-{v} was never drawn")));
        }
        Ok(Drawing::new(vertices, self.bends))
    }
}

/// Validates a lifted drawing against the original instance.
pub(crate) fn finish(c: Canvas<'_>, original: &Instance, tol: f64) -> Result<Drawing> {
    let d = c.into_drawing()?;
    let report = validate(&original.graph, &d, &original.budget, tol)?;
    if !report.is_valid() {
        return Err(Error::LiftFailed(report.summary(5)));
    }
    Ok(d)
}
