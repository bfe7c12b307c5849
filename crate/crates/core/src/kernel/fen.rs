//! Feedback-edge-number kernel: prune degree-one vertices, cut the
//! remaining forest into paths between special vertices, and drop the long
//! paths. The lift redraws every dropped path along a straight guide,
//! detouring around each crossing so that it becomes a right-angle one.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use super::{check_kernel_drawing, finish, Canvas, Recipe, RecipeDetail};
use crate::drawing::{Drawing, Instance};
use crate::error::{Error, Result};
use crate::geometry::{
    clearance_radius, normalize_angle, segment_intersection, CrossingKind, Feature, Point, Segment,
};
use crate::graph::{degree_one_prune, feedback_edge_set, EdgeId, FeedbackEdgeSet, Graph, VertexId};

/// The forest `G - F` cut at special vertices into edge-disjoint paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPartition {
    /// Vertex sequences, sorted by length (edge count) ascending.
    pub paths: Vec<Vec<VertexId>>,
    pub feedback: Vec<EdgeId>,
    pub special: Vec<VertexId>,
}

impl PathPartition {
    /// `p_1..p_l`, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(|p| p.len() - 1).collect()
    }

    /// `p_0 = |F|`.
    pub fn p0(&self) -> usize {
        self.feedback.len()
    }
}

/// Whether the first path after the length gap counts as short.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitRule {
    /// The gap path and everything after it are long.
    #[default]
    Proof,
    /// The gap path itself is still short.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShortLongSplit {
    /// Number of short paths (the last short index).
    pub i0: usize,
    /// First index `i >= 1` with `p_i > 9 l p_{i-1}`, if any.
    pub gap: Option<usize>,
    pub rule: SplitRule,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FenKernelResult {
    pub kernel: Instance,
    pub recipe: Recipe,
    /// On the pruned graph's ids.
    pub partition: PathPartition,
    pub split: ShortLongSplit,
    pub fen: usize,
}

impl FenKernelResult {
    /// `2 (36 fen)^(4 fen)`, saturating.
    pub fn size_bound(&self) -> u128 {
        size_bound(self.fen)
    }

    /// `sum_{i <= i0} p_i` and its bound `sum_{i <= i0} p_0 (9 l)^i`,
    /// saturating.
    pub fn chain(&self) -> (u128, u128) {
        let l = self.partition.paths.len() as u128;
        let p0 = self.partition.p0() as u128;
        let lengths = self.partition.lengths();
        let mut sum = p0;
        let mut bound = p0;
        let mut factor = 1u128;
        for p in lengths.iter().take(self.split.i0) {
            sum = sum.saturating_add(*p as u128);
            factor = factor.saturating_mul(9 * l);
            bound = bound.saturating_add(p0.saturating_mul(factor));
        }
        (sum, bound)
    }
}

pub fn size_bound(fen: usize) -> u128 {
    let base = 36u128.saturating_mul(fen as u128);
    let exp = u32::try_from(4 * fen).unwrap_or(u32::MAX);
    2u128.saturating_mul(base.saturating_pow(exp))
}

/// Cuts `g - F` into maximal paths whose interior avoids special vertices
/// (endpoints of `F` and vertices of degree at least three in `g - F`).
pub fn build_path_partition(g: &Graph, f: &FeedbackEdgeSet) -> Result<PathPartition> {
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 1) {
        return Err(Error::DegreeOneVertex(v));
    }
    let mut in_f = vec![false; g.edge_count()];
    let mut special = vec![false; n];
    for &e in &f.edges {
        in_f[e] = true;
        let (u, v) = g.edge(e);
        special[u] = true;
        special[v] = true;
    }
    let tdeg: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| !in_f[g.edge_id(v, w).unwrap()]).count())
        .collect();
    for v in 0..n {
        if tdeg[v] >= 3 {
            special[v] = true;
        }
    }
    let mut used = vec![false; g.edge_count()];
    let mut paths = Vec::new();
    for s in (0..n).filter(|&v| special[v]) {
        for &first in g.neighbors(s) {
            let e = g.edge_id(s, first).unwrap();
            if in_f[e] || used[e] {
                continue;
            }
            used[e] = true;
            let mut path = vec![s, first];
            let (mut prev, mut cur) = (s, first);
            while !special[cur] {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev && !in_f[g.edge_id(cur, w).unwrap()])
                    .ok_or_else(|| Error::Graph(format!("forest leaf {cur} is not special")))?;
                used[g.edge_id(cur, next).unwrap()] = true;
                path.push(next);
                prev = cur;
                cur = next;
            }
            if path[0] > path[path.len() - 1] {
                path.reverse();
            }
            paths.push(path);
        }
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| !in_f[e] && !used[e]) {
        let (u, v) = g.edge(e);
        return Err(Error::Graph(format!("edge {u}-{v} lies on no special-to-special path")));
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(PathPartition {
        paths,
        feedback: f.edges.clone(),
        special: (0..n).filter(|&v| special[v]).collect(),
    })
}

pub fn split_short_long(pp: &PathPartition, rule: SplitRule) -> ShortLongSplit {
    let l = pp.paths.len();
    let mut prev = pp.p0();
    let mut gap = None;
    for (i, p) in pp.lengths().into_iter().enumerate() {
        if p > 9 * l * prev {
            gap = Some(i + 1);
            break;
        }
        prev = p;
    }
    let i0 = match (gap, rule) {
        (None, _) => l,
        (Some(g), SplitRule::Proof) => g - 1,
        (Some(g), SplitRule::Literal) => g,
    };
    ShortLongSplit { i0, gap, rule }
}

pub fn extract_kernel(inst: &Instance, rule: SplitRule) -> Result<FenKernelResult> {
    let pruned = degree_one_prune(&inst.graph);
    let pg = &pruned.graph;
    let f = feedback_edge_set(pg);
    let partition = build_path_partition(pg, &f)?;
    let split = split_short_long(&partition, rule);

    let mut keep_v = vec![false; pg.vertex_count()];
    let mut keep_e: Vec<EdgeId> = f.edges.clone();
    for &v in &partition.special {
        keep_v[v] = true;
    }
    for path in &partition.paths[..split.i0] {
        for w in path.windows(2) {
            keep_v[w[0]] = true;
            keep_v[w[1]] = true;
            keep_e.push(pg.edge_id(w[0], w[1]).unwrap());
        }
    }
    let kept: Vec<VertexId> = (0..pg.vertex_count()).filter(|&v| keep_v[v]).collect();
    let mut new_id = vec![usize::MAX; pg.vertex_count()];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    keep_e.sort_unstable_by_key(|&e| {
        let (u, v) = pg.edge(e);
        (new_id[u], new_id[v])
    });
    let mut kg = Graph::new(kept.len());
    let mut original_edges = Vec::with_capacity(keep_e.len());
    for &e in &keep_e {
        let (u, v) = pg.edge(e);
        kg.add_edge(new_id[u], new_id[v])?;
        let (ou, ov) = (pruned.to_original[u], pruned.to_original[v]);
        original_edges.push(inst.graph.edge_id(ou, ov).unwrap());
    }
    let kernel = Instance::new(kg, inst.budget.restrict(&original_edges))?;
    let long_paths = partition.paths[split.i0..]
        .iter()
        .map(|p| p.iter().map(|&v| pruned.to_original[v]).collect())
        .collect();
    let recipe = Recipe {
        original: inst.clone(),
        kernel_to_original: kept.iter().map(|&v| pruned.to_original[v]).collect(),
        removal_log: pruned.log.clone(),
        detail: RecipeDetail::Fen { long_paths },
    };
    let result = FenKernelResult { kernel, recipe, partition, split, fen: f.size() };
    if rule == SplitRule::Proof {
        let m = result.kernel.graph.edge_count() as u128;
        assert!(m <= result.size_bound(), "kernel has {m} edges, above the size bound");
        let (sum, bound) = result.chain();
        assert_eq!(sum, m);
        assert!(sum <= bound, "short paths total {sum} edges, above {bound}");
    }
    Ok(result)
}

/// Lifts a drawing of the kernel to the original instance.
pub fn lift_drawing(result: &FenKernelResult, d_short: &Drawing, tol: f64) -> Result<Drawing> {
    lift(&result.kernel, &result.recipe, d_short, tol)
}

pub(crate) fn lift(kernel: &Instance, recipe: &Recipe, d: &Drawing, tol: f64) -> Result<Drawing> {
    let RecipeDetail::Fen { long_paths } = &recipe.detail else {
        return Err(Error::Recipe("not a feedback-edge recipe".into()));
    };
    check_kernel_drawing(kernel, d, tol)?;
    let g = &recipe.original.graph;
    let mut canvas = Canvas::from_kernel(g, kernel, recipe, d)?;
    for path in long_paths {
        let (s, t) = (path[0], path[path.len() - 1]);
        for &v in [s, t].iter() {
            if canvas.pos[v].is_none() {
                return Err(Error::Recipe(format!("long path endpoint {v} is not in the kernel")));
            }
        }
        let route = route_path(&canvas, canvas.at(s), canvas.at(t), tol)?;
        let pts = realize(&route, path.len() - 2, s, t)?;
        for (i, &v) in path[1..path.len() - 1].iter().enumerate() {
            canvas.pos[v] = Some(pts[i]);
        }
        for w in path.windows(2) {
            let e = g
                .edge_id(w[0], w[1])
                .ok_or_else(|| Error::Recipe(format!("path edge {}-{} is not an original edge", w[0], w[1])))?;
            canvas.drawn[e] = true;
        }
    }
    canvas.reattach(&recipe.removal_log)?;
    finish(canvas, &recipe.original, tol)
}

/// A polyline from `A` to `B`: interior points, each flagged with whether
/// the stretch leading to it contains a crossing.
struct Route {
    points: Vec<Point>,
    crossing: Vec<bool>,
    a: Point,
    b: Point,
}

/// Spreads the path's interior vertices over the route: route points first,
/// the rest evenly along the longest crossing-free stretch.
fn realize(route: &Route, interior: usize, s: VertexId, t: VertexId) -> Result<Vec<Point>> {
    let r = route.points.len();
    if r > interior {
        return Err(Error::InsufficientPathVertices { start: s, end: t, needed: r, available: interior });
    }
    let extra = interior - r;
    let mut all = vec![route.a];
    all.extend_from_slice(&route.points);
    all.push(route.b);
    let mut crossing = route.crossing.clone();
    crossing.push(false);
    // The stretch into B is checked separately by the router.
    let last = all.len() - 1;
    let mut best = None;
    for i in 0..last {
        if crossing[i] {
            continue;
        }
        let len = all[i].dist(all[i + 1]);
        if best.is_none_or(|(_, l)| len > l) {
            best = Some((i, len));
        }
    }
    let (k, _) = best.ok_or_else(|| Error::Geometry("route has no crossing-free stretch".into()))?;
    let mut out = Vec::with_capacity(interior);
    for (i, w) in all.windows(2).enumerate() {
        if i > 0 {
            out.push(w[0]);
        }
        if i == k {
            for j in 1..=extra {
                out.push(w[0].lerp(w[1], j as f64 / (extra + 1) as f64));
            }
        }
    }
    Ok(out)
}

/// Obstacles met by the open segment `leg`, as parameters along it, or
/// `None` if the leg runs along some feature.
fn obstacles_on(leg: Segment, segs: &[(EdgeId, Segment)], pts: &[Point], tol: f64) -> Option<Vec<(f64, Point)>> {
    let len = leg.len();
    let near_end = |p: Point| p.dist(leg.a) <= tol * len || p.dist(leg.b) <= tol * len;
    let mut hits = Vec::new();
    for &(_, s) in segs {
        let Some(ev) = segment_intersection(&leg, &s, tol) else { continue };
        if ev.kind == CrossingKind::Overlap {
            return None;
        }
        if near_end(ev.point) {
            continue;
        }
        hits.push((leg.project(ev.point), ev.point));
    }
    for &p in pts {
        if !near_end(p) && leg.dist_to_point(p) <= tol * len.max(1e-300) {
            hits.push((leg.project(p), leg.closest_point(p)));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Merge hits at the same spot.
    let mut merged: Vec<(f64, Point)> = Vec::new();
    for h in hits {
        if merged.last().is_none_or(|m| (h.0 - m.0) * len > tol * len) {
            merged.push(h);
        }
    }
    Some(merged)
}

/// Guide from `a` to `b`: straight if possible, else bent once.
fn guide(a: Point, b: Point, segs: &[(EdgeId, Segment)], pts: &[Point], tol: f64) -> Result<Vec<(Segment, Vec<(f64, Point)>)>> {
    let straight = Segment::raw(a, b);
    if let Some(h) = obstacles_on(straight, segs, pts, tol) {
        return Ok(vec![(straight, h)]);
    }
    let mid = a.lerp(b, 0.5);
    let normal = (b - a).perp();
    for k in 0..40 {
        let mag = [0.1, 0.2, 0.05, 0.3, 0.025][k % 5] * (1.0 + (k / 5) as f64 * 0.37);
        let lambda = if k % 2 == 0 { mag } else { -mag };
        let m = mid + normal * lambda;
        let scale = a.dist(b);
        if segs.iter().any(|(_, s)| s.dist_to_point(m) <= 1e-6 * scale)
            || pts.iter().any(|p| p.dist(m) <= 1e-6 * scale)
        {
            continue;
        }
        let (l1, l2) = (Segment::raw(a, m), Segment::raw(m, b));
        if let (Some(h1), Some(h2)) = (obstacles_on(l1, segs, pts, tol), obstacles_on(l2, segs, pts, tol)) {
            return Ok(vec![(l1, h1), (l2, h2)]);
        }
    }
    Err(Error::Geometry("no guide avoids running along existing edges".into()))
}

fn route_path(canvas: &Canvas<'_>, a: Point, b: Point, tol: f64) -> Result<Route> {
    let segs = canvas.segments();
    let pts = canvas.points();
    let legs = guide(a, b, &segs, &pts, tol)?;
    let mut route = Route { points: Vec::new(), crossing: Vec::new(), a, b };
    let leg_segs: Vec<Segment> = legs.iter().map(|(l, _)| *l).collect();
    for (li, (leg, hits)) in legs.iter().enumerate() {
        let u = leg.dir().unit();
        let scale = leg.len();
        for &(_, x) in hits {
            let on_x = |s: &Segment| s.dist_to_point(x) <= tol * scale.max(s.len());
            let mut features: Vec<Feature> = segs
                .iter()
                .filter(|(_, s)| !on_x(s))
                .map(|&(_, s)| Feature::Segment(s))
                .collect();
            features.extend(pts.iter().filter(|p| p.dist(x) > tol * scale).map(|&p| Feature::Point(p)));
            features.push(Feature::Point(a));
            features.push(Feature::Point(b));
            for (lj, l) in leg_segs.iter().enumerate() {
                if lj != li {
                    features.push(Feature::Segment(*l));
                }
            }
            if li > 0 {
                features.push(Feature::Point(leg.a));
            }
            if li + 1 < legs.len() {
                features.push(Feature::Point(leg.b));
            }
            let eps = clearance_radius(x, &features)?;

            // Directions of everything passing through or ending at x.
            let mut rays: Vec<Point> = Vec::new();
            for (_, s) in segs.iter().filter(|(_, s)| on_x(s)) {
                let tol_pt = tol * scale.max(s.len());
                if s.a.dist(x) > tol_pt {
                    rays.push((s.a - x).unit());
                }
                if s.b.dist(x) > tol_pt {
                    rays.push((s.b - x).unit());
                }
            }
            let v_in = x - u * eps;
            let v_out = x + u * eps;
            let transversal = rays.len() == 2
                && rays[0].cross(rays[1]).abs() <= 1e-12
                && rays[0].dot(rays[1]) < 0.0
                && rays[0].cross(u).abs() > 1e-9;
            if transversal {
                let d = rays[0];
                if d.dot(u).abs() <= tol {
                    // Already a right angle: pass straight through.
                    route.points.push(v_in);
                    route.crossing.push(false);
                    route.points.push(v_out);
                    route.crossing.push(true);
                    continue;
                }
                // Enter, run parallel to the crossed edge, then cross it along
                // its normal and leave.
                let w = v_out - x;
                let v2 = x + d * (2.0 * d.dot(w)) - w;
                route.points.push(v_in);
                route.crossing.push(false);
                route.points.push(v2);
                route.crossing.push(false);
                route.points.push(v_out);
                route.crossing.push(true);
                continue;
            }
            let detour = sweep(x, eps, u, &rays);
            route.points.push(v_in);
            route.crossing.push(false);
            for (p, crossing) in detour {
                route.points.push(p);
                route.crossing.push(crossing);
            }
            route.points.push(v_out);
            route.crossing.push(false);
        }
        if li + 1 < legs.len() {
            route.points.push(leg.b);
            route.crossing.push(false);
        }
    }
    Ok(route)
}

/// Detour around `x` from the entry side to the exit side of the disk of
/// radius `eps`, crossing each ray in between with a short segment normal
/// to it. Returns the points after the entry point, each flagged with
/// whether the stretch leading to it crosses a ray.
fn sweep(x: Point, eps: f64, u: Point, rays: &[Point]) -> Vec<(Point, bool)> {
    let entry = (-u).angle();
    let rel = |d: Point| normalize_angle(d.angle() - entry);
    let mut angles: Vec<f64> = rays.iter().map(|&d| rel(d)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    // Counter-clockwise the sweep covers (0, pi); clockwise (pi, 2 pi).
    let ccw = angles.iter().filter(|&&a| a > 0.0 && a < PI).count();
    let cw = angles.iter().filter(|&&a| a > PI).count();
    let forward = ccw <= cw;
    // Directions bounding the angular gaps: the rays plus entry and exit.
    let mut all: Vec<f64> = angles.clone();
    all.push(0.0);
    all.push(PI);
    all.sort_by(f64::total_cmp);
    all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let gap_around = |a: f64| {
        let i = all.iter().position(|&b| (b - a).abs() < 1e-12).unwrap();
        let prev = if i == 0 { all[all.len() - 1] - TAU } else { all[i - 1] };
        let next = if i + 1 == all.len() { all[0] + TAU } else { all[i + 1] };
        (a - prev).min(next - a)
    };
    let mut crossed: Vec<f64> = angles
        .iter()
        .copied()
        .filter(|&a| if forward { a > 0.0 && a < PI } else { a > PI })
        .collect();
    if !forward {
        crossed.reverse();
    }
    let sign = if forward { 1.0 } else { -1.0 };
    let rho = eps / 2.0;
    let mut out = Vec::new();
    if crossed.is_empty() {
        out.push((x + Point::from_angle(entry + sign * PI / 2.0) * rho, false));
        return out;
    }
    for a in crossed {
        let theta = entry + a;
        let delta = (gap_around(a) / 3.0).min(FRAC_PI_4);
        let d = Point::from_angle(theta);
        let n = d.perp() * sign;
        let c = x + d * rho;
        let h = rho * delta.tan();
        out.push((c - n * h, false));
        out.push((c + n * h, true));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{bend_count, validate, BendBudget};
    use crate::geometry::DEFAULT_TOL;

    /// Two hubs joined by internally disjoint paths with the given lengths.
    pub(crate) fn theta(lengths: &[usize]) -> Graph {
        let mut g = Graph::new(2);
        for &len in lengths {
            let mut prev = 0;
            for _ in 1..len {
                let v = g.add_vertex();
                g.add_edge(prev, v).unwrap();
                prev = v;
            }
            g.add_edge(prev, 1).unwrap();
        }
        g
    }

    /// Independent oracle: maximal special-free paths found by DFS from
    /// every special vertex, as sorted vertex sequences.
    fn oracle_paths(g: &Graph, f: &[EdgeId]) -> Vec<Vec<VertexId>> {
        let t: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(e, _)| !f.contains(e))
            .map(|(_, &uv)| uv)
            .collect();
        let tdeg = |v: VertexId| t.iter().filter(|&&(a, b)| a == v || b == v).count();
        let special = |v: VertexId| tdeg(v) >= 3 || f.iter().any(|&e| g.edge(e).0 == v || g.edge(e).1 == v);
        let mut out = Vec::new();
        for s in (0..g.vertex_count()).filter(|&v| special(v)) {
            fn dfs(
                t: &[(VertexId, VertexId)],
                special: &dyn Fn(VertexId) -> bool,
                path: &mut Vec<VertexId>,
                out: &mut Vec<Vec<VertexId>>,
            ) {
                let v = *path.last().unwrap();
                if path.len() > 1 && special(v) {
                    if path[0] < v {
                        out.push(path.clone());
                    }
                    return;
                }
                for &(a, b) in t {
                    let w = if a == v { b } else if b == v { a } else { continue };
                    if path.len() >= 2 && w == path[path.len() - 2] {
                        continue;
                    }
                    path.push(w);
                    dfs(t, special, path, out);
                    path.pop();
                }
            }
            dfs(&t, &special, &mut vec![s], &mut out);
        }
        out.sort();
        out
    }

    #[test]
    fn theta_partition_matches_dfs_oracle() {
        let g = theta(&[2, 3, 4]);
        let f = feedback_edge_set(&g);
        let pp = build_path_partition(&g, &f).unwrap();
        let mut got = pp.paths.clone();
        got.sort();
        assert_eq!(got, oracle_paths(&g, &f.edges));
        assert_eq!(pp.lengths().iter().sum::<usize>() + pp.p0(), g.edge_count());
    }

    #[test]
    fn cycle_and_k4_partitions() {
        let c8 = Graph::cycle(8);
        let pp = build_path_partition(&c8, &feedback_edge_set(&c8)).unwrap();
        assert_eq!(pp.lengths(), vec![7]);
        assert_eq!(pp.special.len(), 2);

        let k4 = Graph::complete(4);
        let f = feedback_edge_set(&k4);
        let pp = build_path_partition(&k4, &f).unwrap();
        assert_eq!(pp.lengths(), vec![1, 1, 1]);
        assert_eq!(pp.special, vec![0, 1, 2, 3]);
        assert_eq!(pp.p0(), 3);
    }

    #[test]
    fn pendant_vertices_are_rejected() {
        let g = Graph::path(3);
        assert!(matches!(
            build_path_partition(&g, &feedback_edge_set(&g)),
            Err(Error::DegreeOneVertex(0))
        ));
    }

    fn pp_with(p0: usize, lengths: &[usize]) -> PathPartition {
        PathPartition {
            paths: lengths.iter().map(|&p| (0..=p).collect()).collect(),
            feedback: (0..p0).collect(),
            special: vec![],
        }
    }

    #[test]
    fn split_examples() {
        // 200 > 9*3*3: the third path is long.
        let s = split_short_long(&pp_with(1, &[2, 3, 200]), SplitRule::Proof);
        assert_eq!((s.i0, s.gap), (2, Some(3)));
        let s = split_short_long(&pp_with(2, &[3, 4, 5]), SplitRule::Proof);
        assert_eq!((s.i0, s.gap), (3, None));
        // Single path of 100 after |F| = 1: long under the proof reading,
        // short under the literal one.
        let pp = pp_with(1, &[100]);
        assert_eq!(split_short_long(&pp, SplitRule::Proof).i0, 0);
        assert_eq!(split_short_long(&pp, SplitRule::Literal).i0, 1);
        let s = split_short_long(&pp_with(0, &[]), SplitRule::Proof);
        assert_eq!(s.i0, 0);
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(size_bound(0), 2);
        assert_eq!(size_bound(1), 2 * 36u128.pow(4));
        assert_eq!(size_bound(2), 2 * 72u128.pow(8));
        assert_eq!(size_bound(40), u128::MAX);
    }

    #[test]
    fn trees_and_pendants() {
        let tree = Instance::uniform(Graph::path(10), 0, 0).unwrap();
        let r = extract_kernel(&tree, SplitRule::Proof).unwrap();
        assert_eq!(r.kernel.graph.vertex_count(), 0);
        assert_eq!(r.recipe.removal_log.len(), 10);

        let mut g = Graph::cycle(8);
        for i in 0..40 {
            let v = g.add_vertex();
            g.add_edge(i % 8, v).unwrap();
        }
        let r = extract_kernel(&Instance::uniform(g, 1, 2).unwrap(), SplitRule::Proof).unwrap();
        assert!(r.kernel.graph.edge_count() <= 8);
        assert_eq!(r.recipe.removal_log.len(), 40);
    }

    #[test]
    fn long_theta_path_is_dropped() {
        let g = theta(&[2, 3, 10_000]);
        let r = extract_kernel(&Instance::uniform(g, 0, 0).unwrap(), SplitRule::Proof).unwrap();
        // The feedback edge may sit inside the long path and split it.
        assert!(r.kernel.graph.edge_count() <= 7);
        assert_eq!(long_edges(&r) + r.kernel.graph.edge_count(), 10_005);
    }

    fn long_edges(r: &FenKernelResult) -> usize {
        let RecipeDetail::Fen { long_paths } = &r.recipe.detail else { unreachable!() };
        long_paths.iter().map(|p| p.len() - 1).sum()
    }

    /// Kernel drawing with the given positions for original vertices; any
    /// other kernel vertex goes on a far-away convex arc.
    fn kernel_drawing(r: &FenKernelResult, at: impl Fn(VertexId) -> Option<Point>) -> Drawing {
        let pos = r
            .recipe
            .kernel_to_original
            .iter()
            .enumerate()
            .map(|(k, &v)| at(v).unwrap_or_else(|| Point::new(10.0 + k as f64, -10.0 - 0.1 * (k * k) as f64)))
            .collect();
        Drawing::straight_line(pos, r.kernel.graph.edge_count())
    }

    fn lift_planar(inst: &Instance) -> Drawing {
        let r = extract_kernel(inst, SplitRule::Proof).unwrap();
        let pos = crate::planar::planar_layout(&r.kernel.graph).unwrap();
        let d = Drawing::straight_line(pos, r.kernel.graph.edge_count());
        let lifted = lift_drawing(&r, &d, DEFAULT_TOL).unwrap();
        let rep = validate(&inst.graph, &lifted, &inst.budget, DEFAULT_TOL).unwrap();
        assert!(rep.is_valid(), "{}", rep.summary(5));
        assert_eq!(bend_count(&lifted).total, bend_count(&d).total);
        lifted
    }

    #[test]
    fn triangle_with_long_path() {
        let mut g = Graph::cycle(3);
        let mut prev = 0;
        for _ in 0..99 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        g.add_edge(prev, 1).unwrap();
        let inst = Instance::uniform(g, 0, 0).unwrap();
        let r = extract_kernel(&inst, SplitRule::Proof).unwrap();
        assert!(long_edges(&r) >= 90);
        lift_planar(&inst);
    }

    #[test]
    fn tree_lift_regrows_everything() {
        let mut g = Graph::new(1);
        for v in 1..60 {
            let p = (v * 7 + 3) % v;
            g.add_vertex();
            g.add_edge(p, v).unwrap();
        }
        let d = lift_planar(&Instance::uniform(g, 0, 0).unwrap());
        assert_eq!(d.vertices.len(), 60);
    }

    #[test]
    fn detours_around_crossed_edges() {
        // K4 with vertex 2 inside the triangle 0,1,3 and an extra vertex 4
        // below; long paths 2..4 and 3..4 are handed to the lift directly.
        // Their guides cross 0-1 obliquely and at a right angle, 1-2, and
        // each other's detours.
        let mut g = Graph::complete(4);
        g.add_vertex();
        let mut paths = Vec::new();
        for (s, t, len) in [(2, 4, 300), (3, 4, 400)] {
            let mut path = vec![s];
            for _ in 1..len {
                let v = g.add_vertex();
                g.add_edge(*path.last().unwrap(), v).unwrap();
                path.push(v);
            }
            g.add_edge(*path.last().unwrap(), t).unwrap();
            path.push(t);
            paths.push(path);
        }
        let inst = Instance::uniform(g, 1, 1).unwrap();
        let mut kg = Graph::complete(4);
        kg.add_vertex();
        let kernel = Instance::uniform(kg, 1, 1).unwrap();
        let recipe = Recipe {
            original: inst.clone(),
            kernel_to_original: vec![0, 1, 2, 3, 4],
            removal_log: vec![],
            detail: RecipeDetail::Fen { long_paths: paths },
        };
        let kpos = vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(1.7, 1.1),
            Point::new(2.0, 3.0),
            Point::new(2.0, -2.0),
        ];
        let d = Drawing::straight_line(kpos, 6);
        let lifted = lift(&kernel, &recipe, &d, DEFAULT_TOL).unwrap();
        let rep = validate(&inst.graph, &lifted, &inst.budget, DEFAULT_TOL).unwrap();
        assert!(rep.is_valid(), "{}", rep.summary(5));
        assert!(rep.crossing_count >= 3, "{}", rep.crossing_count);
        assert_eq!(rep.total_bends, 0);
    }

    #[test]
    fn guide_through_a_vertex_and_along_an_edge() {
        // Square 0-1-2-3 with diagonal path 0..2 long; vertex 4 sits
        // exactly on the 0-2 line and is joined to 1 and 3.
        let mut g = Graph::cycle(4);
        let c = g.add_vertex();
        g.add_edge(c, 1).unwrap();
        g.add_edge(c, 3).unwrap();
        let mut prev = 0;
        for _ in 0..399 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        g.add_edge(prev, 2).unwrap();
        let inst = Instance::uniform(g, 0, 0).unwrap();
        let r = extract_kernel(&inst, SplitRule::Proof).unwrap();
        assert!(long_edges(&r) >= 390);
        let kpos = [
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
            Point::new(1.0, 1.0),
        ];
        let d = kernel_drawing(&r, |v| kpos.get(v).copied());
        let lifted = lift_drawing(&r, &d, DEFAULT_TOL).unwrap();
        let rep = validate(&inst.graph, &lifted, &BendBudget::straight(inst.graph.edge_count()), DEFAULT_TOL).unwrap();
        assert!(rep.is_valid(), "{}", rep.summary(5));
    }

    #[test]
    fn invalid_kernel_drawing_is_refused() {
        let g = theta(&[2, 3, 400]);
        let inst = Instance::uniform(g, 0, 0).unwrap();
        let r = extract_kernel(&inst, SplitRule::Proof).unwrap();
        let n = r.kernel.graph.vertex_count();
        let d = Drawing::straight_line(vec![Point::default(); n], r.kernel.graph.edge_count());
        assert!(matches!(lift_drawing(&r, &d, DEFAULT_TOL), Err(Error::InvalidKernelDrawing(_))));
    }
}
