//! Simple undirected graphs on dense vertex ids, plus the three structural
//! parameters the kernels are built on: feedback edge sets, vertex covers and
//! neighborhood-diversity partitions.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Simple undirected graph. Edges are stored as `(u, v)` with `u < v`; the
/// edge id is the insertion index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { edges: Vec::new(), adj: vec![Vec::new(); n], index: HashMap::new() }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::Graph(format!("edge {u}-{v} references a vertex >= {n}")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at vertex {u}")));
        }
        let k = key(u, v);
        if self.index.contains_key(&k) {
            return Err(Error::Graph(format!("duplicate edge {}-{}", k.0, k.1)));
        }
        let id = self.edges.len();
        self.edges.push(k);
        self.index.insert(k, id);
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&key(u, v)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.index.contains_key(&key(u, v))
    }

    /// Edges sharing at least one endpoint.
    pub fn edges_adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// Connected-component label per vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Subgraph induced by `keep` (in the given order); returns the subgraph
    /// and the new-to-old vertex map.
    pub fn induced(&self, keep: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut old_to_new = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            old_to_new[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for &(u, v) in &self.edges {
            let (a, b) = (old_to_new[u], old_to_new[v]);
            if a != usize::MAX && b != usize::MAX {
                g.add_edge(a, b).expect("induced subgraph of a simple graph is simple");
            }
        }
        (g, keep.to_vec())
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }
}

/// An edge set whose removal leaves a forest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FeedbackEdgeSet {
    pub edges: Vec<EdgeId>,
}

impl FeedbackEdgeSet {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Minimum feedback edge set: the complement of a BFS spanning forest.
/// Its size is `m - n + c` for `c` components.
pub fn feedback_edge_set(g: &Graph) -> FeedbackEdgeSet {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut tree = vec![false; g.edge_count()];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree[g.edge_id(v, w).unwrap()] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    FeedbackEdgeSet { edges: (0..g.edge_count()).filter(|&e| !tree[e]).collect() }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexCover {
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
}

impl VertexCover {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// First uncovered edge, if any.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let mut member = vec![false; g.vertex_count()];
        for &v in &self.vertices {
            if v < member.len() {
                member[v] = true;
            }
        }
        match g.edges().iter().find(|&&(u, v)| !member[u] && !member[v]) {
            Some(&(u, v)) => Err(Error::NotACover(u, v)),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoverMode {
    #[default]
    Exact,
    Approx2,
}

pub fn vertex_cover(g: &Graph, mode: CoverMode) -> VertexCover {
    match mode {
        CoverMode::Approx2 => matching_cover(g),
        CoverMode::Exact => exact_cover(g),
    }
}

/// Both endpoints of a greedy maximal matching.
fn matching_cover(g: &Graph) -> VertexCover {
    let mut used = vec![false; g.vertex_count()];
    let mut cover = Vec::new();
    for &(u, v) in g.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cover.push(u);
            cover.push(v);
        }
    }
    VertexCover::new(cover)
}

/// Working state for the exact branching: adjacency restricted to vertices
/// that are still undecided.
struct CoverSearch<'g> {
    g: &'g Graph,
    removed: Vec<bool>,
    chosen: Vec<VertexId>,
}

impl CoverSearch<'_> {
    fn live_degree(&self, v: VertexId) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| !self.removed[w]).count()
    }

    fn live_edges(&self) -> usize {
        self.g
            .edges()
            .iter()
            .filter(|&&(u, v)| !self.removed[u] && !self.removed[v])
            .count()
    }

    /// Can the remaining edges be covered with `budget` more vertices?
    fn solve(&mut self, budget: usize) -> bool {
        let n = self.g.vertex_count();
        let mut best = None;
        let mut best_deg = 0;
        for v in 0..n {
            if self.removed[v] {
                continue;
            }
            let d = self.live_degree(v);
            if d > best_deg {
                best_deg = d;
                best = Some(v);
            }
        }
        let Some(v) = best else { return true };
        if budget == 0 {
            return false;
        }
        // A vertex of degree > budget must be taken.
        if best_deg > budget {
            return self.take(&[v], budget);
        }
        if self.live_edges() > budget * best_deg {
            return false;
        }
        if self.take(&[v], budget) {
            return true;
        }
        let nbrs: Vec<VertexId> =
            self.g.neighbors(v).iter().copied().filter(|&w| !self.removed[w]).collect();
        nbrs.len() <= budget && self.take(&nbrs, budget)
    }

    fn take(&mut self, vs: &[VertexId], budget: usize) -> bool {
        if vs.len() > budget {
            return false;
        }
        for &v in vs {
            self.removed[v] = true;
            self.chosen.push(v);
        }
        if self.solve(budget - vs.len()) {
            return true;
        }
        for &v in vs {
            self.removed[v] = false;
            self.chosen.pop();
        }
        false
    }
}

/// Minimum cover by degree branching with iterative deepening on the size,
/// starting from the matching lower bound.
fn exact_cover(g: &Graph) -> VertexCover {
    let upper = matching_cover(g);
    let lower = upper.size() / 2;
    for k in lower..upper.size() {
        let mut search =
            CoverSearch { g, removed: vec![false; g.vertex_count()], chosen: Vec::new() };
        if search.solve(k) {
            return VertexCover::new(search.chosen);
        }
    }
    upper
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartKind {
    Clique,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdPart {
    pub vertices: Vec<VertexId>,
    pub kind: PartKind,
}

/// Partition into twin classes; its size is the neighborhood diversity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NdPartition {
    pub parts: Vec<NdPart>,
}

impl NdPartition {
    pub fn size(&self) -> usize {
        self.parts.len()
    }

    /// Part index per vertex.
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in &p.vertices {
                out[v] = i;
            }
        }
        out
    }
}

/// `N(a) \ {b} == N(b) \ {a}`.
pub fn are_twins(g: &Graph, a: VertexId, b: VertexId) -> bool {
    let strip = |v: VertexId, other: VertexId| {
        let mut s: Vec<VertexId> = g.neighbors(v).iter().copied().filter(|&w| w != other).collect();
        s.sort_unstable();
        s
    };
    strip(a, b) == strip(b, a)
}

/// Minimum neighborhood-diversity partition: vertices with equal open
/// neighborhoods (false twins) or equal closed neighborhoods (true twins)
/// share a part. Singletons are reported as independent.
pub fn nd_partition(g: &Graph) -> NdPartition {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while p[r] != r {
            r = p[r];
        }
        let mut c = v;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let mut open: BTreeMap<Vec<VertexId>, VertexId> = BTreeMap::new();
    let mut closed: BTreeMap<Vec<VertexId>, VertexId> = BTreeMap::new();
    for v in 0..n {
        let mut nb: Vec<VertexId> = g.neighbors(v).to_vec();
        nb.sort_unstable();
        for (table, sig) in [(&mut open, nb.clone()), (&mut closed, {
            let mut c = nb.clone();
            let pos = c.binary_search(&v).unwrap_err();
            c.insert(pos, v);
            c
        })] {
            match table.get(&sig) {
                Some(&rep) => {
                    let (a, b) = (find(&mut parent, rep), find(&mut parent, v));
                    if a != b {
                        parent[b] = a;
                    }
                }
                None => {
                    table.insert(sig, v);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut parts: Vec<NdPart> = groups
        .into_values()
        .map(|vertices| {
            let kind = if vertices.len() >= 2 && g.has_edge(vertices[0], vertices[1]) {
                PartKind::Clique
            } else {
                PartKind::Independent
            };
            NdPart { vertices, kind }
        })
        .collect();
    parts.sort_by_key(|p| p.vertices[0]);
    NdPartition { parts }
}

/// One step of the degree-one pruning: `vertex` was removed while attached
/// to `anchor` (or while isolated, when `anchor` is `None`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    pub vertex: VertexId,
    pub anchor: Option<VertexId>,
}

/// Result of [`degree_one_prune`]: the remaining graph on dense ids, the map
/// from its ids back to the input ids and the removal log in removal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub graph: Graph,
    pub to_original: Vec<VertexId>,
    pub log: Vec<Removal>,
}

/// Repeatedly removes vertices of degree at most one. What remains is the
/// 2-core; trees vanish entirely.
pub fn degree_one_prune(g: &Graph) -> Pruned {
    prune_with(g, |queue: &mut VecDeque<VertexId>| queue.pop_front())
}

/// Pruning with a caller-chosen order of processing candidates.
pub(crate) fn prune_with<F>(g: &Graph, mut next: F) -> Pruned
where
    F: FnMut(&mut VecDeque<VertexId>) -> Option<VertexId>,
{
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for v in 0..n {
        if deg[v] <= 1 {
            queue.push_back(v);
            queued[v] = true;
        }
    }
    let mut log = Vec::new();
    while let Some(v) = next(&mut queue) {
        if removed[v] {
            continue;
        }
        let anchor = g.neighbors(v).iter().copied().find(|&w| !removed[w]);
        removed[v] = true;
        log.push(Removal { vertex: v, anchor });
        if let Some(a) = anchor {
            deg[a] -= 1;
            if deg[a] <= 1 && !queued[a] {
                queued[a] = true;
                queue.push_back(a);
            }
        }
    }
    let keep: Vec<VertexId> = (0..n).filter(|&v| !removed[v]).collect();
    let (graph, to_original) = g.induced(&keep);
    Pruned { graph, to_original, log }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(rng.random_range(0..v), v).unwrap();
        }
        g
    }

    /// Rank of the cycle space over GF(2): m minus the rank of the incidence
    /// matrix, computed by Gaussian elimination on bitsets.
    fn cycle_space_rank(g: &Graph) -> usize {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut rows: Vec<Vec<u64>> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let mut r = vec![0u64; words];
                r[u / 64] ^= 1 << (u % 64);
                r[v / 64] ^= 1 << (v % 64);
                r
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let (w, b) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pr = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[w] & b != 0 {
                    for k in 0..words {
                        row[k] ^= pr[k];
                    }
                }
            }
            rank += 1;
        }
        g.edge_count() - rank
    }

    fn is_forest_without(g: &Graph, f: &FeedbackEdgeSet) -> bool {
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn root(p: &mut Vec<usize>, mut v: usize) -> usize {
            while p[v] != v {
                v = p[v];
            }
            v
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if f.edges.contains(&e) {
                continue;
            }
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    #[test]
    fn fes_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(feedback_edge_set(&random_tree(&mut rng, 12)).size(), 0);
        assert_eq!(feedback_edge_set(&Graph::cycle(5)).size(), 1);
        let k4 = Graph::complete(4);
        let f = feedback_edge_set(&k4);
        assert_eq!(f.size(), 3);
        // Every 3-edge removal that leaves a spanning tree has the same size;
        // count them by enumeration (Cayley: 16 spanning trees of K_4).
        let mut trees = 0;
        for mask in 0u32..64 {
            if mask.count_ones() != 3 {
                continue;
            }
            let removed = FeedbackEdgeSet {
                edges: (0..6).filter(|e| mask & (1 << e) != 0).collect(),
            };
            if is_forest_without(&k4, &removed) {
                trees += 1;
            }
        }
        assert_eq!(trees, 16);
        assert!(is_forest_without(&k4, &f));
    }

    #[test]
    fn fes_matches_cycle_space_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.random_range(1..30);
            let p = rng.random_range(0.02..0.4);
            let g = random_graph(&mut rng, n, p);
            let f = feedback_edge_set(&g);
            let (_, c) = g.component_labels();
            assert_eq!(f.size(), g.edge_count() + c - n);
            assert_eq!(f.size(), cycle_space_rank(&g));
            assert!(is_forest_without(&g, &f));
        }
    }

    fn brute_force_cover(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|mask| g.edges().iter().all(|&(u, v)| mask & (1 << u | 1 << v) != 0))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn cover_examples() {
        let star = Graph::complete_bipartite(1, 5);
        assert_eq!(vertex_cover(&star, CoverMode::Exact).vertices, vec![0]);
        let k4 = Graph::complete(4);
        assert_eq!(brute_force_cover(&k4), 3);
        assert_eq!(vertex_cover(&k4, CoverMode::Exact).size(), 3);
        let c6 = Graph::cycle(6);
        let approx = vertex_cover(&c6, CoverMode::Approx2);
        approx.check(&c6).unwrap();
        assert!(approx.size() <= 6);
        assert!(VertexCover::new(vec![0]).check(&c6).is_err());
    }

    #[test]
    fn cover_bounds_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(0..=10);
            let p = rng.random_range(0.1..0.7);
            let g = random_graph(&mut rng, n, p);
            let exact = vertex_cover(&g, CoverMode::Exact);
            let approx = vertex_cover(&g, CoverMode::Approx2);
            exact.check(&g).unwrap();
            approx.check(&g).unwrap();
            assert_eq!(exact.size(), brute_force_cover(&g));
            assert!(exact.size() <= approx.size() && approx.size() <= 2 * exact.size());
        }
    }

    /// Smallest partition where every part is pairwise twins, by enumerating
    /// all set partitions (restricted growth strings).
    fn brute_force_nd(g: &Graph) -> usize {
        let n = g.vertex_count();
        let mut best = n;
        let mut rgs = vec![0usize; n];
        loop {
            let parts = rgs.iter().max().map_or(0, |m| m + 1);
            if parts < best {
                let ok = (0..n).all(|a| {
                    (a + 1..n).all(|b| rgs[a] != rgs[b] || are_twins(g, a, b))
                });
                if ok {
                    best = parts;
                }
            }
            // next restricted growth string
            let mut i = n;
            loop {
                if i <= 1 {
                    return best;
                }
                i -= 1;
                let cap = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for r in rgs.iter_mut().skip(i + 1) {
                        *r = 0;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn nd_examples() {
        let k5 = nd_partition(&Graph::complete(5));
        assert_eq!(k5.size(), 1);
        assert_eq!(k5.parts[0].kind, PartKind::Clique);
        let k33 = nd_partition(&Graph::complete_bipartite(3, 3));
        assert_eq!(k33.size(), 2);
        assert!(k33.parts.iter().all(|p| p.kind == PartKind::Independent));
        let p4 = Graph::path(4);
        assert_eq!(brute_force_nd(&p4), 4);
        assert_eq!(nd_partition(&p4).size(), 4);
    }

    fn check_nd_invariants(g: &Graph, p: &NdPartition) {
        let part = p.part_of(g.vertex_count());
        assert!(part.iter().all(|&i| i != usize::MAX));
        for pt in &p.parts {
            for (i, &a) in pt.vertices.iter().enumerate() {
                for &b in &pt.vertices[i + 1..] {
                    assert!(are_twins(g, a, b));
                    assert_eq!(g.has_edge(a, b), pt.kind == PartKind::Clique);
                }
            }
        }
        for (i, p1) in p.parts.iter().enumerate() {
            for p2 in &p.parts[i + 1..] {
                let links: Vec<bool> = p1
                    .vertices
                    .iter()
                    .flat_map(|&a| p2.vertices.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| g.has_edge(a, b))
                    .collect();
                assert!(links.iter().all(|&x| x) || links.iter().all(|&x| !x));
            }
        }
    }

    #[test]
    fn nd_matches_twin_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=7);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let p = nd_partition(&g);
            check_nd_invariants(&g, &p);
            // number of equivalence classes of the twin relation
            let mut classes = 0;
            for v in 0..n {
                if (0..v).all(|u| !are_twins(&g, u, v)) {
                    classes += 1;
                }
            }
            assert_eq!(p.size(), classes);
            assert_eq!(p.size(), brute_force_nd(&g));
        }
    }

    #[test]
    fn prune_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_tree(&mut rng, 9);
        let p = degree_one_prune(&t);
        assert_eq!(p.graph.vertex_count(), 0);
        assert_eq!(p.log.len(), 9);

        let mut c5 = Graph::cycle(5);
        c5.add_vertex();
        c5.add_edge(0, 5).unwrap();
        let p = degree_one_prune(&c5);
        assert_eq!(p.graph.vertex_count(), 5);
        assert_eq!(p.log, vec![Removal { vertex: 5, anchor: Some(0) }]);

        // K_4 on 0..4 with the path 3 - 4 - 5 - 6 hanging off vertex 3.
        let mut lollipop = Graph::complete(4);
        for v in 4..7 {
            lollipop.add_vertex();
            lollipop.add_edge(v - 1, v).unwrap();
        }
        let p = degree_one_prune(&lollipop);
        assert_eq!(p.graph, Graph::complete(4));
        assert_eq!(
            p.log,
            vec![
                Removal { vertex: 6, anchor: Some(5) },
                Removal { vertex: 5, anchor: Some(4) },
                Removal { vertex: 4, anchor: Some(3) },
            ]
        );
    }

    proptest! {
        #[test]
        fn prune_is_confluent(seed in any::<u64>(), n in 3usize..25, extra in 0usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = random_tree(&mut rng, n);
            for _ in 0..extra {
                let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
            let fifo = degree_one_prune(&g);
            let lifo = prune_with(&g, |q| q.pop_back());
            let mut shuffle_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let random = prune_with(&g, |q| {
                if q.is_empty() {
                    None
                } else {
                    let i = shuffle_rng.random_range(0..q.len());
                    q.remove(i)
                }
            });
            prop_assert_eq!(&fifo.graph, &lifo.graph);
            prop_assert_eq!(&fifo.to_original, &lifo.to_original);
            prop_assert_eq!(&fifo.graph, &random.graph);
            prop_assert_eq!(&fifo.to_original, &random.to_original);
            prop_assert!((0..fifo.graph.vertex_count()).all(|v| fifo.graph.degree(v) >= 2));
        }
    }
}
