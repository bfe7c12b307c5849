//! Vertex-cover kernel: group non-cover vertices by their neighborhood in
//! the cover, reject on oversized types with three or more cover neighbors,
//! and trim oversized types with two. Also the reduction from a
//! neighborhood-diversity partition to a small vertex cover.

use std::collections::BTreeMap;

use super::{check_kernel_drawing, finish, Canvas, Recipe, RecipeDetail, TrimmedMember};
use crate::drawing::{crossing_census, BendBudget, Drawing, Instance};
use crate::error::{Error, Result};
use crate::geometry::{segment_intersection, Point, Segment};
use crate::graph::{degree_one_prune, Graph, NdPartition, PartKind, VertexCover, VertexId};

/// Non-cover vertices grouped by their exact neighborhood in the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    pub cover: Vec<VertexId>,
    /// Signature (sorted cover neighbors) -> members, ascending.
    pub types: BTreeMap<Vec<VertexId>, Vec<VertexId>>,
}

impl TypePartition {
    pub fn k(&self) -> usize {
        self.cover.len()
    }

    pub fn member_count(&self) -> usize {
        self.types.values().map(Vec::len).sum()
    }
}

pub fn build_types(g: &Graph, c: &VertexCover) -> Result<TypePartition> {
    c.check(g)?;
    let mut types: BTreeMap<Vec<VertexId>, Vec<VertexId>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        if c.contains(v) {
            continue;
        }
        let mut sig = g.neighbors(v).to_vec();
        sig.sort_unstable();
        if sig.len() < 2 {
            return Err(Error::SparseType { vertex: v, neighbors: sig.len() });
        }
        types.entry(sig).or_default().push(v);
    }
    Ok(TypePartition { cover: c.vertices.clone(), types })
}

/// Which member limit to apply to types with at least three cover
/// neighbors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdRule {
    /// Keep at most `max(2, 7 - i) + b` members.
    #[default]
    Lemma,
    /// Keep at most `max(3, 7 - i) + b` members.
    Theorem,
}

impl ThresholdRule {
    pub fn limit(self, neighbors: usize, b: usize) -> usize {
        let floor = match self {
            ThresholdRule::Lemma => 2,
            ThresholdRule::Theorem => 3,
        };
        floor.max(7usize.saturating_sub(neighbors)) + b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub signature: Vec<VertexId>,
    pub members: usize,
    pub limit: usize,
    pub rule: ThresholdRule,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rule = match self.rule {
            ThresholdRule::Lemma => "max(2,7-i)+b",
            ThresholdRule::Theorem => "max(3,7-i)+b",
        };
        write!(
            f,
            "type with {} cover neighbors has {} members, limit {} ({rule})",
            self.signature.len(),
            self.members,
            self.limit
        )
    }
}

/// First type with three or more cover neighbors that is over its limit.
pub fn reject_big_types(tp: &TypePartition, budget: &BendBudget, rule: ThresholdRule) -> Option<Rejection> {
    tp.types.iter().find_map(|(sig, members)| {
        let limit = rule.limit(sig.len(), budget.total);
        (sig.len() >= 3 && members.len() > limit).then(|| Rejection {
            signature: sig.clone(),
            members: members.len(),
            limit,
            rule,
        })
    })
}

/// `3k + 6 + b + 1`.
pub fn two_neighbor_limit(k: usize, b: usize) -> usize {
    3 * k + 7 + b
}

/// Cuts every two-neighbor type down to [`two_neighbor_limit`] members,
/// dropping the highest-numbered ones. Returns the trimmed partition and the
/// removed members.
pub fn trim_two_neighbor_types(tp: &TypePartition, budget: &BendBudget) -> (TypePartition, Vec<(VertexId, (VertexId, VertexId))>) {
    let limit = two_neighbor_limit(tp.k(), budget.total);
    let mut out = tp.clone();
    let mut removed = Vec::new();
    for (sig, members) in out.types.iter_mut() {
        if sig.len() == 2 && members.len() > limit {
            for w in members.drain(limit..) {
                removed.push((w, (sig[0], sig[1])));
            }
        }
    }
    (out, removed)
}

#[derive(Clone, Debug, PartialEq)]
pub enum VcVerdict {
    Kernel,
    Reject(Rejection),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VcKernelResult {
    /// The reduced instance, or a fixed no-instance on rejection.
    pub kernel: Instance,
    pub verdict: VcVerdict,
    pub recipe: Recipe,
    /// Types on the pruned graph's ids, after trimming.
    pub types: TypePartition,
}

impl VcKernelResult {
    pub fn is_reject(&self) -> bool {
        matches!(self.verdict, VcVerdict::Reject(_))
    }
}

/// `k + 2^k (b + 4) + k^2 (3k + 7 + b)`, saturating.
pub fn size_bound(k: usize, b: usize) -> u128 {
    let (k, b) = (k as u128, b as u128);
    let pow = if k >= 127 { u128::MAX } else { 1u128 << k };
    k.saturating_add(pow.saturating_mul(b + 4)).saturating_add(k * k * (3 * k + 7 + b))
}

/// K6 with no bends allowed: the canonical small no-instance.
pub fn no_instance() -> Instance {
    Instance::new(Graph::complete(6), BendBudget::straight(15)).unwrap()
}

/// `c` must cover `inst.graph`; it is restricted to what survives pruning.
pub fn vc_kernelize(inst: &Instance, c: &VertexCover, rule: ThresholdRule) -> Result<VcKernelResult> {
    c.check(&inst.graph)?;
    let pruned = degree_one_prune(&inst.graph);
    let pg = &pruned.graph;
    let cover = VertexCover::new((0..pg.vertex_count()).filter(|&v| c.contains(pruned.to_original[v])).collect());
    let types = build_types(pg, &cover)?;
    let mut recipe = Recipe {
        original: inst.clone(),
        kernel_to_original: Vec::new(),
        removal_log: pruned.log.clone(),
        detail: RecipeDetail::Vc { trimmed: Vec::new(), rejected: None },
    };
    if let Some(rej) = reject_big_types(&types, &inst.budget, rule) {
        recipe.detail = RecipeDetail::Vc { trimmed: Vec::new(), rejected: Some(rej.to_string()) };
        return Ok(VcKernelResult { kernel: no_instance(), verdict: VcVerdict::Reject(rej), recipe, types });
    }
    let (trimmed_types, removed) = trim_two_neighbor_types(&types, &inst.budget);
    let mut gone = vec![false; pg.vertex_count()];
    for &(w, _) in &removed {
        gone[w] = true;
    }
    let keep: Vec<VertexId> = (0..pg.vertex_count()).filter(|&v| !gone[v]).collect();
    let (kg, to_pruned) = pg.induced(&keep);
    let to_original: Vec<VertexId> = to_pruned.iter().map(|&v| pruned.to_original[v]).collect();
    let edges: Vec<usize> = kg
        .edges()
        .iter()
        .map(|&(a, b)| inst.graph.edge_id(to_original[a], to_original[b]).unwrap())
        .collect();
    let kernel = Instance::new(kg, inst.budget.restrict(&edges))?;
    let bound = size_bound(cover.size(), inst.budget.total);
    assert!(
        (kernel.graph.vertex_count() as u128) <= bound,
        "kernel has {} vertices, above the bound {bound}",
        kernel.graph.vertex_count()
    );
    recipe.kernel_to_original = to_original;
    recipe.detail = RecipeDetail::Vc {
        trimmed: removed
            .iter()
            .map(|&(w, (u, v))| TrimmedMember {
                vertex: pruned.to_original[w],
                neighbors: (pruned.to_original[u], pruned.to_original[v]),
            })
            .collect(),
        rejected: None,
    };
    Ok(VcKernelResult { kernel, verdict: VcVerdict::Kernel, recipe, types: trimmed_types })
}

/// Lifts a drawing of the kernel back to the original instance.
pub fn vc_lift_drawing(result: &VcKernelResult, d: &Drawing, tol: f64) -> Result<Drawing> {
    lift(&result.kernel, &result.recipe, d, tol)
}

pub(crate) fn lift(kernel: &Instance, recipe: &Recipe, d: &Drawing, tol: f64) -> Result<Drawing> {
    let RecipeDetail::Vc { trimmed, rejected } = &recipe.detail else {
        return Err(Error::Recipe("not a vertex-cover recipe".into()));
    };
    if let Some(why) = rejected {
        return Err(Error::Recipe(format!("the instance was rejected ({why}); there is nothing to lift")));
    }
    check_kernel_drawing(kernel, d, tol)?;
    let g = &recipe.original.graph;
    let mut canvas = Canvas::from_kernel(g, kernel, recipe, d)?;

    // Kernel vertices whose two edges are straight and cross nothing.
    let census = crossing_census(&kernel.graph, d, tol)?;
    let mut busy = vec![false; kernel.graph.edge_count()];
    for c in census.crossings.iter().chain(&census.overlaps) {
        busy[c.edges.0] = true;
        busy[c.edges.1] = true;
    }
    let mut groups: BTreeMap<(VertexId, VertexId), Vec<VertexId>> = BTreeMap::new();
    for t in trimmed {
        groups.entry(t.neighbors).or_default().push(t.vertex);
    }
    for (&(u, v), copies) in &groups {
        let mut candidates = Vec::new();
        for (k, &w) in recipe.kernel_to_original.iter().enumerate() {
            let nb: Vec<VertexId> = kernel.graph.neighbors(k).iter().map(|&x| recipe.kernel_to_original[x]).collect();
            if nb.len() != 2 || !(nb.contains(&u) && nb.contains(&v)) {
                continue;
            }
            let clean = kernel.graph.neighbors(k).iter().all(|&x| {
                let e = kernel.graph.edge_id(k, x).unwrap();
                d.bends[e].is_empty() && !busy[e]
            });
            if clean {
                candidates.push(w);
            }
        }
        let Some(&w) = candidates.first() else {
            return Err(Error::NoCrossingFreeMember {
                u,
                v,
                detail: format!("{} copies to place", copies.len()),
            });
        };
        place_copies(&mut canvas, w, u, v, copies, tol)?;
    }
    canvas.reattach(&recipe.removal_log)?;
    finish(canvas, &recipe.original, tol)
}

/// Puts `copies` on the bisector line of the angle `u w v` near `w`, evenly
/// spaced, shrinking the spread until their edges meet nothing.
fn place_copies(canvas: &mut Canvas<'_>, w: VertexId, u: VertexId, v: VertexId, copies: &[VertexId], tol: f64) -> Result<()> {
    let (pw, pu, pv) = (canvas.at(w), canvas.at(u), canvas.at(v));
    let a = (pu - pw).unit();
    let b = (pv - pw).unit();
    let mut bis = a + b;
    if bis.norm() < 1e-9 {
        bis = a.perp();
    }
    let bis = bis.unit();
    let segs: Vec<Segment> = canvas.segments().into_iter().map(|(_, s)| s).collect();
    let pts = canvas.points();
    let nearest = segs
        .iter()
        .filter(|s| s.a != pw && s.b != pw)
        .map(|s| s.dist_to_point(pw))
        .chain(pts.iter().filter(|&&p| p != pw).map(|p| p.dist(pw)))
        .fold(f64::INFINITY, f64::min);
    let mut radius = if nearest.is_finite() { nearest / 4.0 } else { 1.0 };
    let k = copies.len();
    for _ in 0..60 {
        for dir in [bis, -bis] {
            let spots: Vec<Point> = (1..=k).map(|j| pw + dir * (radius * j as f64 / k as f64)).collect();
            if spots.iter().all(|&p| copy_is_clean(p, pu, pv, &segs, &pts, tol)) {
                for (&c, &p) in copies.iter().zip(&spots) {
                    canvas.pos[c] = Some(p);
                    for x in [u, v] {
                        let e = canvas.g.edge_id(c, x).ok_or_else(|| {
                            Error::Recipe(format!("trimmed member {c} is not adjacent to {x}"))
                        })?;
                        canvas.drawn[e] = true;
                    }
                }
                return Ok(());
            }
        }
        radius /= 2.0;
    }
    Err(Error::NoCrossingFreeMember { u, v, detail: format!("no room next to member {w}") })
}

/// The two edges from `p` to `u` and `v` touch existing geometry only at
/// `u` and `v`, and `p` itself is clear.
fn copy_is_clean(p: Point, pu: Point, pv: Point, segs: &[Segment], pts: &[Point], tol: f64) -> bool {
    let scale = p.dist(pu).max(p.dist(pv));
    if pts.iter().any(|q| q.dist(p) <= 1e3 * tol * scale) || segs.iter().any(|s| s.dist_to_point(p) <= 1e3 * tol * scale) {
        return false;
    }
    for end in [pu, pv] {
        let new = Segment::raw(p, end);
        for s in segs {
            if let Some(ev) = segment_intersection(&new, s, tol) {
                let at_end = ev.point.dist(end) <= tol * scale.max(s.len());
                let shares = s.a == end || s.b == end;
                if !(at_end && shares && ev.kind != crate::geometry::CrossingKind::Overlap) {
                    return false;
                }
            }
        }
    }
    true
}

/// Outcome of [`nd_to_vertex_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NdCover {
    Cover(VertexCover),
    Reject { slack: usize, budget: usize },
}

/// Cover from a neighborhood-diversity partition: every clique part, plus
/// the smaller side of each adjacent pair of independent parts. Clique parts
/// above 5 and chosen sides above 3 draw on one shared slack of `b`.
pub fn nd_to_vertex_cover(g: &Graph, ndp: &NdPartition, budget: &BendBudget) -> NdCover {
    let mut slack = 0usize;
    let mut chosen = vec![false; ndp.parts.len()];
    for (i, p) in ndp.parts.iter().enumerate() {
        if p.kind == PartKind::Clique {
            chosen[i] = true;
            slack += p.vertices.len().saturating_sub(5);
        }
    }
    for i in 0..ndp.parts.len() {
        for j in i + 1..ndp.parts.len() {
            let (pi, pj) = (&ndp.parts[i], &ndp.parts[j]);
            if pi.kind != PartKind::Independent || pj.kind != PartKind::Independent {
                continue;
            }
            if !g.has_edge(pi.vertices[0], pj.vertices[0]) {
                continue;
            }
            let small = if pj.vertices.len() < pi.vertices.len() { j } else { i };
            if !chosen[small] {
                chosen[small] = true;
                slack += ndp.parts[small].vertices.len().saturating_sub(3);
            }
        }
    }
    if slack > budget.total {
        return NdCover::Reject { slack, budget: budget.total };
    }
    let mut vs = Vec::new();
    for (i, p) in ndp.parts.iter().enumerate() {
        if chosen[i] {
            vs.extend_from_slice(&p.vertices);
        }
    }
    NdCover::Cover(VertexCover::new(vs))
}
