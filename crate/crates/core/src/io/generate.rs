//! Random instances with a bounded structural parameter.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::{BendBudget, Instance, MAX_EDGE_BENDS};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// Spanning tree plus exactly `param` extra edges.
    BoundedFen,
    /// Every edge touches one of `param` cover vertices.
    BoundedVc,
}

/// Generates an instance with total budget `b` and every edge capped at
/// `min(b, 3)`. Same arguments, same instance.
pub fn generate_instance(kind: GenKind, param: usize, n: usize, b: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<VertexId> = (0..n).collect();
    label.shuffle(&mut rng);
    let edges = match kind {
        GenKind::BoundedFen => fen_edges(param, n, &mut rng)?,
        GenKind::BoundedVc => vc_edges(param, n, &mut rng)?,
    };
    let mut g = Graph::new(n);
    for (u, v) in edges {
        g.add_edge(label[u], label[v])?;
    }
    let cap = b.min(MAX_EDGE_BENDS as usize) as u8;
    let m = g.edge_count();
    Instance::new(g, BendBudget::uniform(m, cap, b)?)
}

fn fen_edges(param: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(VertexId, VertexId)>> {
    if n == 0 {
        return if param == 0 { Ok(Vec::new()) } else { Err(Error::Generator("no vertices for extra edges".into())) };
    }
    let non_tree = n * (n - 1) / 2 - (n - 1);
    if param > non_tree {
        return Err(Error::Generator(format!("{param} extra edges requested, only {non_tree} non-edges left in a tree on {n} vertices")));
    }
    // Random recursive tree: each vertex hangs off an earlier one.
    let mut edges: Vec<(VertexId, VertexId)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let mut present: HashSet<(VertexId, VertexId)> = edges.iter().copied().collect();
    if 2 * param > non_tree {
        let free: Vec<(VertexId, VertexId)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        let mut picks = index::sample(rng, free.len(), param).into_vec();
        picks.sort_unstable();
        edges.extend(picks.into_iter().map(|i| free[i]));
    } else {
        while edges.len() < n - 1 + param {
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            let e = (u.min(v), u.max(v));
            if u != v && present.insert(e) {
                edges.push(e);
            }
        }
    }
    Ok(edges)
}

fn vc_edges(k: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(VertexId, VertexId)>> {
    if k > n {
        return Err(Error::Generator(format!("cover of size {k} on {n} vertices")));
    }
    if n > k && k < 2 {
        return Err(Error::Generator("non-cover vertices need at least two cover vertices".into()));
    }
    let mut edges = Vec::new();
    for w in k..n {
        let size = rng.random_range(2..=k);
        let mut nb = index::sample(rng, k, size).into_vec();
        nb.sort_unstable();
        edges.extend(nb.into_iter().map(|c| (c, w)));
    }
    Ok(edges)
}
