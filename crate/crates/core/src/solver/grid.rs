//! Exhaustive search over placements on a small integer grid, with exact
//! predicates.

use crate::drawing::Drawing;
use crate::geometry::Point;
use crate::graph::Graph;

use super::search::is_rac;

type P = (i64, i64);

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: P, b: P) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: P, b: P) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

/// `p` on the closed segment `ab`.
fn on_segment(p: P, a: P, b: P) -> bool {
    cross(sub(b, a), sub(p, a)) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

fn proper_crossing(a: P, b: P, c: P, d: P) -> bool {
    let o1 = cross(sub(b, a), sub(c, a)).signum();
    let o2 = cross(sub(b, a), sub(d, a)).signum();
    let o3 = cross(sub(d, c), sub(a, c)).signum();
    let o4 = cross(sub(d, c), sub(b, c)).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

struct Grid<'g> {
    g: &'g Graph,
    cells: Vec<P>,
    pos: Vec<Option<P>>,
    used: Vec<bool>,
    tried: u64,
}

impl Grid<'_> {
    /// Constraints that become decidable once `v` is placed.
    fn consistent(&self, v: usize) -> bool {
        let g = self.g;
        let pv = self.pos[v].unwrap();
        let placed = |e: usize| {
            let (a, b) = g.edge(e);
            Some((self.pos[a]?, self.pos[b]?))
        };
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            let Some((pa, pb)) = placed(e) else { continue };
            if a != v && b != v {
                if on_segment(pv, pa, pb) {
                    return false;
                }
                continue;
            }
            // A new edge at v.
            for (w, pw) in self.pos.iter().enumerate() {
                if let Some(pw) = *pw {
                    if w != a && w != b && on_segment(pw, pa, pb) {
                        return false;
                    }
                }
            }
            for f in 0..g.edge_count() {
                if f == e || g.edges_adjacent(e, f) {
                    continue;
                }
                let (c, d) = g.edge(f);
                // Pairs of new edges are seen from both sides; check once.
                if (c == v || d == v) && f < e {
                    continue;
                }
                let Some((pc, pd)) = placed(f) else { continue };
                if proper_crossing(pa, pb, pc, pd) && dot(sub(pb, pa), sub(pd, pc)) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, v: usize) -> bool {
        if v == self.pos.len() {
            return true;
        }
        for i in 0..self.cells.len() {
            if self.used[i] {
                continue;
            }
            self.tried += 1;
            self.used[i] = true;
            self.pos[v] = Some(self.cells[i]);
            if self.consistent(v) && self.place(v + 1) {
                return true;
            }
            self.pos[v] = None;
            self.used[i] = false;
        }
        false
    }
}

/// Tries every injective placement of the vertices on a `w`-by-`w` grid.
/// Returns a drawing if one is a straight-line RAC drawing, together with
/// the number of partial placements explored.
pub fn grid_search(g: &Graph, w: usize, tol: f64) -> (Option<Drawing>, u64) {
    let n = g.vertex_count();
    let cells: Vec<P> = (0..w as i64).flat_map(|x| (0..w as i64).map(move |y| (x, y))).collect();
    if n > cells.len() {
        return (None, 0);
    }
    let mut grid = Grid { g, cells, pos: vec![None; n], used: vec![false; w * w], tried: 0 };
    if !grid.place(0) {
        return (None, grid.tried);
    }
    let pts = grid.pos.iter().map(|p| {
        let (x, y) = p.unwrap();
        Point::new(x as f64, y as f64)
    });
    let d = Drawing::straight_line(pts.collect(), g.edge_count());
    // Exact predicates agree with the floating validator on small integers.
    debug_assert!(is_rac(g, &d, tol));
    (Some(d), grid.tried)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_k4_and_k5_minus_edge() {
        let (d, _) = grid_search(&Graph::complete(4), 3, 1e-9);
        assert!(is_rac(&Graph::complete(4), &d.unwrap(), 1e-9));
        let mut k5e = Graph::new(5);
        for (u, v) in Graph::complete(5).edges().iter().skip(1) {
            k5e.add_edge(*u, *v).unwrap();
        }
        assert!(grid_search(&k5e, 4, 1e-9).0.is_some());
    }

    #[test]
    fn exact_predicates() {
        assert!(on_segment((1, 1), (0, 0), (2, 2)));
        assert!(!on_segment((3, 3), (0, 0), (2, 2)));
        assert!(proper_crossing((0, 0), (2, 2), (0, 2), (2, 0)));
        assert!(!proper_crossing((0, 0), (2, 2), (1, 1), (2, 0)));
    }

    #[test]
    fn too_small_grid_is_exhausted() {
        let (d, tried) = grid_search(&Graph::complete(5), 2, 1e-9);
        assert!(d.is_none());
        assert_eq!(tried, 0);
        // One cell cannot host a triangle.
        let (d, tried) = grid_search(&Graph::cycle(3), 1, 1e-9);
        assert!(d.is_none() && tried == 0);
    }
}
