//! Polyline drawings, bend budgets and the RAC validator.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{is_right_angle, segment_intersection, CrossingEvent, CrossingKind, Point, Segment};
use crate::graph::{EdgeId, Graph, VertexId};

/// Bend caps per edge can be at most this.
pub const MAX_EDGE_BENDS: u8 = 3;

/// Total bend budget `b` plus a per-edge cap (indexed by edge id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BendBudget {
    pub total: usize,
    pub per_edge: Vec<u8>,
}

impl BendBudget {
    pub fn new(total: usize, per_edge: Vec<u8>) -> Result<Self> {
        if let Some((e, &b)) = per_edge.iter().enumerate().find(|(_, &b)| b > MAX_EDGE_BENDS) {
            return Err(Error::Budget(format!("edge {e} has cap {b} > {MAX_EDGE_BENDS}")));
        }
        Ok(Self { total, per_edge })
    }

    /// Same cap on all `m` edges.
    pub fn uniform(m: usize, cap: u8, total: usize) -> Result<Self> {
        Self::new(total, vec![cap; m])
    }

    /// The zero budget: straight-line drawings only.
    pub fn straight(m: usize) -> Self {
        Self { total: 0, per_edge: vec![0; m] }
    }

    /// Sub-budget for the edges listed (old ids, in new-id order).
    pub fn restrict(&self, edges: &[EdgeId]) -> Self {
        Self { total: self.total, per_edge: edges.iter().map(|&e| self.per_edge[e]).collect() }
    }
}

/// A BRAC instance: graph, total budget and per-edge caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub budget: BendBudget,
}

impl Instance {
    pub fn new(graph: Graph, budget: BendBudget) -> Result<Self> {
        if budget.per_edge.len() != graph.edge_count() {
            return Err(Error::Budget(format!(
                "{} edge caps for {} edges",
                budget.per_edge.len(),
                graph.edge_count()
            )));
        }
        Ok(Self { graph, budget })
    }

    /// Every edge capped at `cap`, total `total`.
    pub fn uniform(graph: Graph, cap: u8, total: usize) -> Result<Self> {
        let budget = BendBudget::uniform(graph.edge_count(), cap, total)?;
        Self::new(graph, budget)
    }
}

/// Vertex positions and, per edge, the interior bend points listed from the
/// lower-numbered endpoint to the higher one (the order of
/// [`Graph::edge`]).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Drawing {
    pub vertices: Vec<Point>,
    pub bends: Vec<Vec<Point>>,
}

impl Drawing {
    pub fn new(vertices: Vec<Point>, bends: Vec<Vec<Point>>) -> Self {
        Self { vertices, bends }
    }

    pub fn straight_line(vertices: Vec<Point>, m: usize) -> Self {
        Self { vertices, bends: vec![Vec::new(); m] }
    }

    /// Full point sequence of edge `e`, endpoints included.
    pub fn polyline(&self, g: &Graph, e: EdgeId) -> Vec<Point> {
        let (u, v) = g.edge(e);
        let mut pts = Vec::with_capacity(self.bends[e].len() + 2);
        pts.push(self.vertices[u]);
        pts.extend_from_slice(&self.bends[e]);
        pts.push(self.vertices[v]);
        pts
    }

    pub fn segments(&self, g: &Graph, e: EdgeId) -> Vec<Segment> {
        self.polyline(g, e).windows(2).map(|w| Segment::raw(w[0], w[1])).collect()
    }

    /// Applies `f` to every vertex and bend point.
    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Drawing {
        Drawing {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            bends: self.bends.iter().map(|b| b.iter().map(|&p| f(p)).collect()).collect(),
        }
    }

    /// All points of the drawing.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.vertices.iter().copied().chain(self.bends.iter().flatten().copied())
    }

    /// `(min, max)` corners of the bounding box, or `None` for an empty drawing.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.points();
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| {
            (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y)))
        }))
    }

    pub fn check_shape(&self, g: &Graph) -> Result<()> {
        if self.vertices.len() != g.vertex_count() {
            return Err(Error::Structure(format!(
                "{} vertex positions for {} vertices",
                self.vertices.len(),
                g.vertex_count()
            )));
        }
        if self.bends.len() != g.edge_count() {
            return Err(Error::Structure(format!(
                "{} polylines for {} edges",
                self.bends.len(),
                g.edge_count()
            )));
        }
        if let Some(p) = self.points().find(|p| !p.is_finite()) {
            return Err(Error::Structure(format!("non-finite coordinate {p}")));
        }
        Ok(())
    }
}

/// Restriction of a drawing to a subgraph: `vertices` lists the kept
/// vertices (new id = position in the list), `edges` the kept edges, which
/// must have both endpoints kept.
pub fn subdrawing(
    g: &Graph,
    d: &Drawing,
    vertices: &[VertexId],
    edges: &[EdgeId],
) -> Result<(Graph, Drawing)> {
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        new_id[v] = i;
    }
    let mut sub = Graph::new(vertices.len());
    let mut bends = Vec::with_capacity(edges.len());
    for &e in edges {
        let (u, v) = g.edge(e);
        let (a, b) = (new_id[u], new_id[v]);
        if a == usize::MAX || b == usize::MAX {
            return Err(Error::Structure(format!("edge {u}-{v} leaves the kept vertex set")));
        }
        sub.add_edge(a, b)?;
        let mut pts = d.bends[e].clone();
        // Bends are stored from the smaller endpoint id.
        if (a < b) != (u < v) {
            pts.reverse();
        }
        bends.push(pts);
    }
    let pos = vertices.iter().map(|&v| d.vertices[v]).collect();
    Ok((sub, Drawing::new(pos, bends)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BendCount {
    pub total: usize,
    pub per_edge: Vec<usize>,
}

pub fn bend_count(d: &Drawing) -> BendCount {
    let per_edge: Vec<usize> = d.bends.iter().map(Vec::len).collect();
    BendCount { total: per_edge.iter().sum(), per_edge }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    CoincidentVertices,
    DegenerateSegment,
    /// Consecutive segments of an edge continue straight (180 degrees).
    StraightBend,
    /// Consecutive segments of an edge double back over each other.
    FoldBack,
    /// Non-consecutive segments of one edge meet.
    SelfIntersection,
    VertexOnEdge,
    Overlap,
    /// Edges sharing an endpoint meet somewhere else.
    AdjacentEdgeContact,
    NonRightAngleCrossing,
    /// Contact at a bend point or an endpoint that is not a proper crossing.
    Touch,
    EdgeBendLimit,
    TotalBendLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Drawing,
    Vertex(VertexId),
    Vertices(VertexId, VertexId),
    Edge(EdgeId),
    Edges(EdgeId, EdgeId),
    VertexEdge(VertexId, EdgeId),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Location,
    pub point: Option<Point>,
    pub details: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {:?}", self.kind, self.location)?;
        if let Some(p) = self.point {
            write!(f, " near {p}")?;
        }
        if !self.details.is_empty() {
            write!(f, ": {}", self.details)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub total_bends: usize,
    pub crossing_count: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.is_valid() {
            Verdict::Valid
        } else {
            Verdict::Invalid
        }
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    /// First few violations, one per line.
    pub fn summary(&self, limit: usize) -> String {
        let mut s: Vec<String> = self.violations.iter().take(limit).map(|v| v.to_string()).collect();
        if self.violations.len() > limit {
            s.push(format!("... and {} more", self.violations.len() - limit));
        }
        s.join("\n")
    }
}

/// A contact between segments of two distinct edges.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeCrossing {
    pub edges: (EdgeId, EdgeId),
    /// Segment indices along each edge's polyline.
    pub segments: (usize, usize),
    pub event: CrossingEvent,
}

/// Proper crossings and overlaps between segments of distinct edges.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Census {
    pub crossings: Vec<EdgeCrossing>,
    pub overlaps: Vec<EdgeCrossing>,
}

/// One polyline segment with provenance.
#[derive(Clone, Copy, Debug)]
struct Seg {
    edge: EdgeId,
    index: usize,
    last: bool,
    seg: Segment,
    lo: Point,
    hi: Point,
}

fn collect_segments(g: &Graph, d: &Drawing, tol: f64) -> Vec<Seg> {
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        let segs = d.segments(g, e);
        let k = segs.len();
        for (index, seg) in segs.into_iter().enumerate() {
            let pad = tol * seg.len();
            out.push(Seg {
                edge: e,
                index,
                last: index + 1 == k,
                seg,
                lo: Point::new(seg.a.x.min(seg.b.x) - pad, seg.a.y.min(seg.b.y) - pad),
                hi: Point::new(seg.a.x.max(seg.b.x) + pad, seg.a.y.max(seg.b.y) + pad),
            });
        }
    }
    out
}

/// Calls `f(i, j)` for every pair of boxes that overlap; boxes are
/// `(lo, hi)` corners. Sort-and-sweep on x.
fn box_pairs(boxes: &[(Point, Point)], mut f: impl FnMut(usize, usize)) {
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&i, &j| boxes[i].0.x.total_cmp(&boxes[j].0.x));
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let (lo, hi) = boxes[i];
        active.retain(|&j| boxes[j].1.x >= lo.x);
        for &j in &active {
            let (lo2, hi2) = boxes[j];
            if lo2.y <= hi.y && lo.y <= hi2.y {
                f(j.min(i), j.max(i));
            }
        }
        active.push(i);
    }
}

/// Vertex at an endpoint of segment `s`, if that endpoint is a vertex.
fn vertex_end(g: &Graph, s: &Seg, at_b: bool) -> Option<VertexId> {
    let (u, v) = g.edge(s.edge);
    match (at_b, s.index == 0, s.last) {
        (false, true, _) => Some(u),
        (true, _, true) => Some(v),
        _ => None,
    }
}

/// Vertex endpoint of `s` sitting at `p`, if any.
fn vertex_at(g: &Graph, s: &Seg, p: Point, eps: f64) -> Option<VertexId> {
    if s.seg.a.dist(p) <= eps {
        if let Some(v) = vertex_end(g, s, false) {
            return Some(v);
        }
    }
    if s.seg.b.dist(p) <= eps {
        if let Some(v) = vertex_end(g, s, true) {
            return Some(v);
        }
    }
    None
}

/// Proper crossings and overlaps between segments of distinct edges.
pub fn crossing_census(g: &Graph, d: &Drawing, tol: f64) -> Result<Census> {
    d.check_shape(g)?;
    let segs = collect_segments(g, d, tol);
    let boxes: Vec<(Point, Point)> = segs.iter().map(|s| (s.lo, s.hi)).collect();
    let mut census = Census::default();
    let mut pairs = Vec::new();
    box_pairs(&boxes, |i, j| pairs.push((i, j)));
    pairs.sort_unstable();
    for (i, j) in pairs {
        let (s, t) = (&segs[i], &segs[j]);
        if s.edge == t.edge {
            continue;
        }
        let Some(ev) = segment_intersection(&s.seg, &t.seg, tol) else { continue };
        let rec = EdgeCrossing { edges: (s.edge, t.edge), segments: (s.index, t.index), event: ev };
        match ev.kind {
            CrossingKind::InteriorInterior => census.crossings.push(rec),
            CrossingKind::Overlap => census.overlaps.push(rec),
            CrossingKind::EndpointTouch => {}
        }
    }
    Ok(census)
}

/// Checks that `d` is a RAC drawing of `g` within `budget`. Structural
/// mismatches are errors; everything else is reported as violations.
pub fn validate(g: &Graph, d: &Drawing, budget: &BendBudget, tol: f64) -> Result<ValidationReport> {
    d.check_shape(g)?;
    if budget.per_edge.len() != g.edge_count() {
        return Err(Error::Structure(format!(
            "{} edge caps for {} edges",
            budget.per_edge.len(),
            g.edge_count()
        )));
    }
    let mut out = Vec::new();
    let mut push = |kind, location, point, details: String| {
        out.push(Violation { kind, location, point, details })
    };

    // Vertex injectivity, relative to the drawing's extent.
    let scale = match d.bounding_box() {
        Some((lo, hi)) if lo.dist(hi) > 0.0 => lo.dist(hi),
        _ => 1.0,
    };
    let veps = tol * scale;
    let vboxes: Vec<(Point, Point)> = d
        .vertices
        .iter()
        .map(|&p| (Point::new(p.x - veps, p.y - veps), Point::new(p.x + veps, p.y + veps)))
        .collect();
    let mut coincident = Vec::new();
    box_pairs(&vboxes, |i, j| {
        if d.vertices[i].dist(d.vertices[j]) <= veps {
            coincident.push((i, j));
        }
    });
    coincident.sort_unstable();
    for (u, v) in coincident {
        push(ViolationKind::CoincidentVertices, Location::Vertices(u, v), Some(d.vertices[u]), String::new());
    }

    // Per-edge shape.
    for e in 0..g.edge_count() {
        let segs = d.segments(g, e);
        for (i, s) in segs.iter().enumerate() {
            if s.len() <= veps {
                push(
                    ViolationKind::DegenerateSegment,
                    Location::Edge(e),
                    Some(s.a),
                    format!("segment {i} has length {:e}", s.len()),
                );
            }
        }
        for (i, w) in segs.windows(2).enumerate() {
            let (u, v) = (w[0].dir(), w[1].dir());
            if u.cross(v).abs() <= tol * u.norm() * v.norm() {
                let kind = if u.dot(v) > 0.0 { ViolationKind::StraightBend } else { ViolationKind::FoldBack };
                push(kind, Location::Edge(e), Some(w[0].b), format!("bend {i}"));
            }
        }
        for i in 0..segs.len() {
            for j in i + 2..segs.len() {
                if let Some(ev) = segment_intersection(&segs[i], &segs[j], tol) {
                    push(
                        ViolationKind::SelfIntersection,
                        Location::Edge(e),
                        Some(ev.point),
                        format!("segments {i} and {j}"),
                    );
                }
            }
        }
    }

    let segs = collect_segments(g, d, tol);

    // Vertices lying on non-incident edges.
    {
        let mut boxes: Vec<(Point, Point)> = segs.iter().map(|s| (s.lo, s.hi)).collect();
        let nseg = boxes.len();
        boxes.extend(d.vertices.iter().map(|&p| (p, p)));
        let mut hits = Vec::new();
        box_pairs(&boxes, |i, j| {
            if i < nseg && j >= nseg {
                let (s, v) = (&segs[i], j - nseg);
                let (a, b) = g.edge(s.edge);
                if v != a && v != b && s.seg.dist_to_point(d.vertices[v]) <= tol * s.seg.len() {
                    hits.push((v, s.edge));
                }
            }
        });
        hits.sort_unstable();
        hits.dedup();
        for (v, e) in hits {
            push(ViolationKind::VertexOnEdge, Location::VertexEdge(v, e), Some(d.vertices[v]), String::new());
        }
    }

    // Pairwise contacts between distinct edges.
    let boxes: Vec<(Point, Point)> = segs.iter().map(|s| (s.lo, s.hi)).collect();
    let mut pairs = Vec::new();
    box_pairs(&boxes, |i, j| pairs.push((i, j)));
    pairs.sort_unstable();
    let mut crossing_count = 0;
    for (i, j) in pairs {
        let (s, t) = (&segs[i], &segs[j]);
        if s.edge == t.edge {
            continue;
        }
        let Some(ev) = segment_intersection(&s.seg, &t.seg, tol) else { continue };
        let loc = Location::Edges(s.edge, t.edge);
        let adjacent = g.edges_adjacent(s.edge, t.edge);
        match ev.kind {
            CrossingKind::Overlap => {
                push(ViolationKind::Overlap, loc, Some(ev.point), String::new());
            }
            CrossingKind::InteriorInterior => {
                crossing_count += 1;
                if adjacent {
                    push(ViolationKind::AdjacentEdgeContact, loc, Some(ev.point), "crossing".into());
                } else if !is_right_angle(&ev, tol) {
                    push(
                        ViolationKind::NonRightAngleCrossing,
                        loc,
                        Some(ev.point),
                        format!("angle {:.6} deg", ev.angle.to_degrees()),
                    );
                }
            }
            CrossingKind::EndpointTouch => {
                let eps = tol * s.seg.len().max(t.seg.len());
                let ws = vertex_at(g, s, ev.point, eps);
                let wt = vertex_at(g, t, ev.point, eps);
                match (ws, wt) {
                    // Shared endpoint of adjacent edges: allowed.
                    (Some(a), Some(b)) if a == b => {}
                    // Vertex contacts are reported as coincidence or
                    // vertex-on-edge above.
                    (Some(_), _) | (_, Some(_)) => {}
                    _ => {
                        let kind = if adjacent { ViolationKind::AdjacentEdgeContact } else { ViolationKind::Touch };
                        push(kind, loc, Some(ev.point), "contact at a bend".into());
                    }
                }
            }
        }
    }

    let counts = bend_count(d);
    for (e, (&have, &cap)) in counts.per_edge.iter().zip(&budget.per_edge).enumerate() {
        if have > cap as usize {
            push(ViolationKind::EdgeBendLimit, Location::Edge(e), None, format!("{have} bends, cap {cap}"));
        }
    }
    if counts.total > budget.total {
        push(
            ViolationKind::TotalBendLimit,
            Location::Drawing,
            None,
            format!("{} bends, budget {}", counts.total, budget.total),
        );
    }

    Ok(ValidationReport { violations: out, total_bends: counts.total, crossing_count })
}
