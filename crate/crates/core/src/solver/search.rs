//! Straight-line RAC feasibility search.
//!
//! Numeric mode minimizes a penalty over vertex coordinates: squared cosines
//! of proper crossings plus clipped inverse-square barriers that keep
//! vertices apart from each other and from non-incident edges. Descent is a
//! coordinate-wise line search with adaptive steps; once the barriers are
//! quiet and every crossing is nearly perpendicular, a minimum-norm
//! Gauss-Newton polish drives the cosines to zero and the validator decides.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::{validate, BendBudget, Drawing};
use crate::geometry::Point;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planar::planar_layout;

use super::grid::grid_search;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Crossing-free layouts only.
    Planar,
    /// Planar shortcut, then the penalty search.
    Numeric,
    /// Planar shortcut, then every placement on a small grid.
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub seed: u64,
    pub restarts: usize,
    /// Sweeps over all coordinates per restart.
    pub iters: usize,
    pub tol: f64,
    pub grid_size: usize,
    /// Largest vertex count handled by grid mode.
    pub grid_max_vertices: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            mode: SearchMode::Numeric,
            seed: 0,
            restarts: 64,
            iters: 2000,
            tol: crate::geometry::DEFAULT_TOL,
            grid_size: 4,
            grid_max_vertices: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchFailure {
    /// Ran out of restarts or sweeps; says nothing about existence.
    BudgetExhausted,
    /// Every grid placement was tried and none is a RAC drawing.
    GridExhausted,
    /// Grid mode on a graph too large for it.
    TooLargeForGrid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Search {
    pub outcome: Result<Drawing, SearchFailure>,
    pub iterations: u64,
}

pub fn straight_line_rac_search(g: &Graph, opts: &SearchOptions) -> Search {
    if let Ok(pos) = planar_layout(g) {
        let d = Drawing::straight_line(pos, g.edge_count());
        if is_rac(g, &d, opts.tol) {
            return Search { outcome: Ok(d), iterations: 0 };
        }
    }
    match opts.mode {
        SearchMode::Planar => Search { outcome: Err(SearchFailure::BudgetExhausted), iterations: 0 },
        SearchMode::Grid => {
            if g.vertex_count() > opts.grid_max_vertices {
                return Search { outcome: Err(SearchFailure::TooLargeForGrid), iterations: 0 };
            }
            let (found, tried) = grid_search(g, opts.grid_size, opts.tol);
            Search { outcome: found.ok_or(SearchFailure::GridExhausted), iterations: tried }
        }
        SearchMode::Numeric => numeric(g, opts),
    }
}

pub(crate) fn is_rac(g: &Graph, d: &Drawing, tol: f64) -> bool {
    validate(g, d, &BendBudget::straight(g.edge_count()), tol).is_ok_and(|r| r.is_valid())
}

fn numeric(g: &Graph, opts: &SearchOptions) -> Search {
    let n = g.vertex_count();
    if n == 0 {
        return Search { outcome: Ok(Drawing::straight_line(Vec::new(), 0)), iterations: 0 };
    }
    let p = Penalty::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut iterations = 0u64;
    for _ in 0..opts.restarts {
        let mut x: Vec<Point> = (0..n).map(|_| Point::new(rng.random(), rng.random())).collect();
        let mut steps = vec![0.1f64; 2 * n];
        let mut last_polish = f64::INFINITY;
        let mut best = f64::INFINITY;
        let mut stale = 0;
        for _ in 0..opts.iters {
            iterations += 1;
            let delta = 0.01 * diameter(&x);
            for c in 0..2 * n {
                let v = c / 2;
                let before = p.local(&x, v, delta);
                let orig = x[v];
                let mut moved = false;
                for sign in [1.0, -1.0] {
                    let h = sign * steps[c];
                    x[v] = if c % 2 == 0 { Point::new(orig.x + h, orig.y) } else { Point::new(orig.x, orig.y + h) };
                    if p.local(&x, v, delta) < before {
                        moved = true;
                        break;
                    }
                }
                if moved {
                    steps[c] = (steps[c] * 1.2).min(diameter(&x).max(1e-9));
                } else {
                    x[v] = orig;
                    steps[c] *= 0.5;
                }
            }
            let status = p.status(&x, 0.01 * diameter(&x));
            if status.barrier == 0.0 && status.worst_cos2 < 1e-4 && status.total < last_polish {
                last_polish = status.total;
                if let Some(d) = polish(g, &p, &x, opts.tol) {
                    return Search { outcome: Ok(d), iterations };
                }
            }
            if status.total < best * (1.0 - 1e-9) {
                best = status.total;
                stale = 0;
            } else {
                stale += 1;
            }
            let scale = diameter(&x).max(1e-300);
            if stale > 200 || steps.iter().all(|&h| h < 1e-13 * scale) {
                break;
            }
        }
    }
    Search { outcome: Err(SearchFailure::BudgetExhausted), iterations }
}

fn diameter(x: &[Point]) -> f64 {
    let (mut lo, mut hi) = (x[0], x[0]);
    for p in x {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    lo.dist(hi)
}

const BARRIER_CAP: f64 = 1e12;

fn barrier(d: f64, delta: f64) -> f64 {
    if d >= delta {
        0.0
    } else if d <= 0.0 {
        BARRIER_CAP
    } else {
        ((delta / d).powi(2) - 1.0).min(BARRIER_CAP)
    }
}

fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let l2 = ab.dot(ab);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / l2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Cosine of the angle between two segments if they cross properly.
fn crossing_cos(p1: Point, p2: Point, q1: Point, q2: Point) -> Option<f64> {
    let (a, b) = (p2 - p1, q2 - q1);
    let o1 = a.cross(q1 - p1);
    let o2 = a.cross(q2 - p1);
    let o3 = b.cross(p1 - q1);
    let o4 = b.cross(p2 - q1);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        Some(a.dot(b) / (a.norm() * b.norm()))
    } else {
        None
    }
}

pub(crate) struct Penalty<'g> {
    g: &'g Graph,
    incident: Vec<Vec<EdgeId>>,
}

struct Status {
    total: f64,
    barrier: f64,
    worst_cos2: f64,
    crossings: Vec<(EdgeId, EdgeId)>,
}

impl<'g> Penalty<'g> {
    fn new(g: &'g Graph) -> Self {
        let mut incident = vec![Vec::new(); g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        Self { g, incident }
    }

    fn touches(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.g.edge(e);
        a == v || b == v
    }

    fn pair(&self, x: &[Point], e: EdgeId, f: EdgeId) -> f64 {
        let (a, b) = self.g.edge(e);
        let (c, d) = self.g.edge(f);
        crossing_cos(x[a], x[b], x[c], x[d]).map_or(0.0, |c| c * c)
    }

    /// Every penalty term that depends on the position of `v`.
    fn local(&self, x: &[Point], v: VertexId, delta: f64) -> f64 {
        let g = self.g;
        let mut s = 0.0;
        for &e in &self.incident[v] {
            let (a, b) = g.edge(e);
            for f in 0..g.edge_count() {
                if !g.edges_adjacent(e, f) && f != e {
                    s += self.pair(x, e, f);
                }
            }
            for w in 0..g.vertex_count() {
                if w != a && w != b {
                    s += barrier(seg_dist(x[w], x[a], x[b]), delta);
                }
            }
        }
        for w in 0..g.vertex_count() {
            if w != v {
                s += barrier(x[v].dist(x[w]), delta);
            }
        }
        for (f, &(a, b)) in g.edges().iter().enumerate() {
            if !self.touches(f, v) {
                s += barrier(seg_dist(x[v], x[a], x[b]), delta);
            }
        }
        s
    }

    fn status(&self, x: &[Point], delta: f64) -> Status {
        let g = self.g;
        let (mut total, mut bar, mut worst) = (0.0, 0.0, 0.0f64);
        let mut crossings = Vec::new();
        for e in 0..g.edge_count() {
            let (a, b) = g.edge(e);
            for f in e + 1..g.edge_count() {
                if g.edges_adjacent(e, f) {
                    continue;
                }
                let (c, d) = g.edge(f);
                if let Some(cos) = crossing_cos(x[a], x[b], x[c], x[d]) {
                    total += cos * cos;
                    worst = worst.max(cos * cos);
                    crossings.push((e, f));
                }
            }
            for w in 0..g.vertex_count() {
                if w != a && w != b {
                    bar += barrier(seg_dist(x[w], x[a], x[b]), delta);
                }
            }
        }
        for v in 0..x.len() {
            for w in v + 1..x.len() {
                bar += barrier(x[v].dist(x[w]), delta);
            }
        }
        Status { total: total + bar, barrier: bar, worst_cos2: worst, crossings }
    }
}

/// Drives the cosines of the current crossings to zero with minimum-norm
/// Gauss-Newton steps, then asks the validator.
fn polish(g: &Graph, p: &Penalty<'_>, x0: &[Point], tol: f64) -> Option<Drawing> {
    let status = p.status(x0, 0.01 * diameter(x0));
    let pairs = status.crossings;
    let mut x = x0.to_vec();
    let n = x.len();
    for _ in 0..40 {
        let k = pairs.len();
        if k == 0 {
            break;
        }
        let mut r: DVector<f64> = DVector::zeros(k);
        let mut jac: DMatrix<f64> = DMatrix::zeros(k, 2 * n);
        for (row, &(e, f)) in pairs.iter().enumerate() {
            let (p1, p2) = g.edge(e);
            let (q1, q2) = g.edge(f);
            let (a, b) = (x[p2] - x[p1], x[q2] - x[q1]);
            let (na, nb) = (a.norm(), b.norm());
            let cos = a.dot(b) / (na * nb);
            r[row] = cos;
            let da = b * (1.0 / (na * nb)) - a * (cos / (na * na));
            let db = a * (1.0 / (na * nb)) - b * (cos / (nb * nb));
            for (v, s, d) in [(p2, 1.0, da), (p1, -1.0, da), (q2, 1.0, db), (q1, -1.0, db)] {
                jac[(row, 2 * v)] += s * d.x;
                jac[(row, 2 * v + 1)] += s * d.y;
            }
        }
        if r.amax() < 1e-15 {
            break;
        }
        let jjt = &jac * jac.transpose();
        let mu = 1e-14 * (1.0 + jjt.trace());
        let sys = jjt + DMatrix::identity(k, k) * mu;
        let y = sys.cholesky()?.solve(&r);
        let step = jac.transpose() * y;
        for v in 0..n {
            x[v] = Point::new(x[v].x - step[2 * v], x[v].y - step[2 * v + 1]);
        }
        if !x.iter().all(|q| q.is_finite()) {
            return None;
        }
    }
    let d = Drawing::straight_line(x, g.edge_count());
    is_rac(g, &d, tol).then_some(d)
}

#[cfg(test)]
pub(crate) fn quick(mode: SearchMode, seed: u64) -> SearchOptions {
    SearchOptions { mode, seed, restarts: 32, iters: 1500, ..SearchOptions::default() }
}
