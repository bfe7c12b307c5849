//! Direct drawing with three bends per edge.
//!
//! Vertices sit on the diagonal at (i, i). Edge {i, j} with i < j leaves i
//! with a short slanted segment, runs horizontally in a lane just above
//! row i, climbs vertically in a lane just right of column j and enters j
//! with another short slanted segment. Every crossing is between a
//! horizontal and a vertical piece. Lane offsets shrink towards the far end
//! of an edge so that edges sharing a vertex never meet.

use crate::drawing::Drawing;
use crate::geometry::Point;
use crate::graph::Graph;

/// Half-width of the neighborhood of a vertex used by its edge ends.
const S: f64 = 0.2;

pub fn three_bend_drawing(g: &Graph) -> Drawing {
    let n = g.vertex_count();
    let vertices: Vec<Point> = (0..n).map(|i| Point::new(i as f64, i as f64)).collect();
    let k = (n + 2) as f64;
    let bends = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (i, j) = (a.min(b), a.max(b));
            let (fi, fj) = (i as f64, j as f64);
            let tau = S * (n - j + 1) as f64 / k;
            let rho = S * (n - i) as f64 / k;
            let mut pts = vec![
                Point::new(fi + S, fi + tau),
                Point::new(fj + rho, fi + tau),
                Point::new(fj + rho, fj - S),
            ];
            if a > b {
                pts.reverse();
            }
            pts
        })
        .collect();
    Drawing::new(vertices, bends)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{validate, BendBudget};
    use proptest::prelude::*;

    fn check(g: &Graph) {
        let d = three_bend_drawing(g);
        let m = g.edge_count();
        let r = validate(g, &d, &BendBudget::uniform(m, 3, 3 * m).unwrap(), 1e-9).unwrap();
        assert!(r.is_valid(), "{}", r.summary(5));
        assert_eq!(r.total_bends, 3 * m);
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=9 {
            check(&Graph::complete(n));
        }
        check(&Graph::complete_bipartite(4, 4));
    }

    proptest! {
        #[test]
        fn any_graph(n in 1usize..=8, bits in any::<u32>()) {
            let mut g = Graph::new(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits >> (k % 32) & 1 == 1 {
                        g.add_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            check(&g);
        }
    }
}
