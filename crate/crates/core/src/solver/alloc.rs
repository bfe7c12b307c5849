//! Bend allocations and the subdivisions that turn bends into vertices.

use crate::drawing::{BendBudget, Drawing};
use crate::error::Result;
use crate::geometry::Point;
use crate::graph::{Graph, VertexId};

/// Bends assigned to each edge (indexed by edge id).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BendAllocation {
    pub per_edge: Vec<u8>,
}

impl BendAllocation {
    pub fn zero(m: usize) -> Self {
        Self { per_edge: vec![0; m] }
    }

    pub fn total(&self) -> usize {
        self.per_edge.iter().map(|&b| b as usize).sum()
    }

    pub fn fits(&self, budget: &BendBudget) -> bool {
        self.per_edge.len() == budget.per_edge.len()
            && self.per_edge.iter().zip(&budget.per_edge).all(|(a, c)| a <= c)
            && self.total() <= budget.total
    }
}

/// Every allocation within the budget, by ascending total; within a total,
/// in descending lexicographic order.
pub fn enumerate_allocations(budget: &BendBudget) -> Allocations {
    let caps = budget.per_edge.clone();
    let capacity: usize = caps.iter().map(|&c| c as usize).sum();
    let max_total = budget.total.min(capacity).min(3 * caps.len());
    Allocations { caps, max_total, total: 0, current: None, done: false }
}

pub struct Allocations {
    caps: Vec<u8>,
    max_total: usize,
    total: usize,
    current: Option<Vec<u8>>,
    done: bool,
}

impl Allocations {
    /// Lexicographically largest vector with the given sum, filling from
    /// position `from`.
    fn fill(&self, v: &mut [u8], from: usize, mut rem: usize) {
        for j in from..v.len() {
            let take = rem.min(self.caps[j] as usize);
            v[j] = take as u8;
            rem -= take;
        }
    }

    fn successor(&self, cur: &[u8]) -> Option<Vec<u8>> {
        let m = cur.len();
        let mut suffix_sum = 0usize;
        let mut suffix_cap = 0usize;
        for i in (0..m).rev() {
            if cur[i] > 0 && suffix_cap > suffix_sum {
                let mut next = cur.to_vec();
                next[i] -= 1;
                self.fill(&mut next, i + 1, suffix_sum + 1);
                return Some(next);
            }
            suffix_sum += cur[i] as usize;
            suffix_cap += self.caps[i] as usize;
        }
        None
    }
}

impl Iterator for Allocations {
    type Item = BendAllocation;

    fn next(&mut self) -> Option<BendAllocation> {
        if self.done {
            return None;
        }
        let next = match &self.current {
            None => {
                let mut v = vec![0; self.caps.len()];
                self.fill(&mut v, 0, 0);
                Some(v)
            }
            Some(cur) => match self.successor(cur) {
                Some(v) => Some(v),
                None if self.total < self.max_total => {
                    self.total += 1;
                    let mut v = vec![0; self.caps.len()];
                    self.fill(&mut v, 0, self.total);
                    Some(v)
                }
                None => None,
            },
        };
        match next {
            Some(v) => {
                self.current = Some(v.clone());
                Some(BendAllocation { per_edge: v })
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

/// A graph with every edge replaced by a path; `paths[e]` lists the inserted
/// vertices of edge `e` from its lower endpoint to its higher one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Graph,
    pub paths: Vec<Vec<VertexId>>,
    pub original_vertices: usize,
}

pub fn subdivide_for_allocation(g: &Graph, alloc: &BendAllocation) -> Result<Subdivision> {
    let n = g.vertex_count();
    let extra = alloc.total();
    let mut h = Graph::new(n + extra);
    let mut next = n;
    let mut paths = Vec::with_capacity(g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let inner: Vec<VertexId> = (next..next + alloc.per_edge[e] as usize).collect();
        next += inner.len();
        let mut prev = u;
        for &s in &inner {
            h.add_edge(prev, s)?;
            prev = s;
        }
        h.add_edge(prev, v)?;
        paths.push(inner);
    }
    Ok(Subdivision { graph: h, paths, original_vertices: n })
}

impl Subdivision {
    /// Turns a drawing of the subdivided graph into a polyline drawing of
    /// the original one. Inserted vertices that sit on a straight line
    /// between their neighbors are dropped instead of becoming 180-degree
    /// bends.
    pub fn fold_back(&self, g: &Graph, d: &Drawing, tol: f64) -> Drawing {
        let vertices = d.vertices[..self.original_vertices].to_vec();
        let mut bends = Vec::with_capacity(self.paths.len());
        for (e, path) in self.paths.iter().enumerate() {
            let (_, v) = g.edge(e);
            let end = d.vertices[v];
            let mut pts: Vec<Point> = Vec::new();
            let mut prev = d.vertices[g.edge(e).0];
            for (i, &s) in path.iter().enumerate() {
                let here = d.vertices[s];
                let next = path.get(i + 1).map_or(end, |&t| d.vertices[t]);
                let (a, b) = (here - prev, next - here);
                let straight = a.cross(b).abs() <= tol * a.norm() * b.norm() && a.dot(b) > 0.0;
                if !straight {
                    pts.push(here);
                    prev = here;
                }
            }
            bends.push(pts);
        }
        Drawing::new(vertices, bends)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all(caps: &[u8], b: usize) -> Vec<Vec<u8>> {
        enumerate_allocations(&BendBudget::new(b, caps.to_vec()).unwrap()).map(|a| a.per_edge).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(all(&[1, 1], 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(all(&[1, 1, 1], 0), vec![vec![0, 0, 0]]);
        assert_eq!(all(&[0, 0], 5), vec![vec![0, 0]]);
        assert_eq!(all(&[], 3), vec![Vec::<u8>::new()]);
        assert_eq!(all(&[2, 1], 3), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![2, 1]]);
    }

    proptest! {
        #[test]
        fn enumeration_matches_brute_force(caps in proptest::collection::vec(0u8..=3, 0..=4), b in 0usize..8) {
            // Oracle: every vector in the box, filtered by total.
            let mut expected = 0usize;
            let boxes: usize = caps.iter().map(|&c| c as usize + 1).product();
            for code in 0..boxes {
                let mut rest = code;
                let mut total = 0;
                for &c in &caps {
                    total += rest % (c as usize + 1);
                    rest /= c as usize + 1;
                }
                if total <= b {
                    expected += 1;
                }
            }
            let got = all(&caps, b);
            prop_assert_eq!(got.len(), expected);
            let mut seen = std::collections::HashSet::new();
            let mut last_total = 0;
            for a in &got {
                let t: usize = a.iter().map(|&x| x as usize).sum();
                prop_assert!(t >= last_total && t <= b);
                prop_assert!(a.iter().zip(&caps).all(|(x, c)| x <= c));
                prop_assert!(seen.insert(a.clone()));
                last_total = t;
            }
        }
    }

    #[test]
    fn subdivisions() {
        let tri = Graph::cycle(3);
        let s = subdivide_for_allocation(&tri, &BendAllocation::zero(3)).unwrap();
        assert_eq!(s.graph, tri);
        let edge = Graph::path(2);
        let s = subdivide_for_allocation(&edge, &BendAllocation { per_edge: vec![3] }).unwrap();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (5, 4));
        assert_eq!(s.paths[0], vec![2, 3, 4]);
        let k4 = Graph::complete(4);
        let mut a = BendAllocation::zero(6);
        a.per_edge[2] = 1;
        let s = subdivide_for_allocation(&k4, &a).unwrap();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (5, 7));
    }

    #[test]
    fn fold_back_keeps_turns_and_drops_straight_points() {
        let edge = Graph::path(2);
        let s = subdivide_for_allocation(&edge, &BendAllocation { per_edge: vec![2] }).unwrap();
        let d = Drawing::straight_line(
            vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 1.0), Point::new(1.5, 0.5)],
            3,
        );
        let folded = s.fold_back(&edge, &d, 1e-9);
        // (1,1) is a real turn; (1.5,0.5) lies on the way to (2,0).
        assert_eq!(folded.bends[0], vec![Point::new(1.0, 1.0)]);
        assert_eq!(folded.vertices.len(), 2);
    }
}
