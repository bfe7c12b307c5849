//! Planarity testing and crossing-free straight-line layouts.
//!
//! Blocks are embedded with the face-splitting path-addition method
//! (Demoucron, Malgrange and Pertuiset), triangulated by inserting a ring
//! and a hub into every face, and drawn with Tutte's barycentric method.
//! Blocks are then glued at cut vertices: each child subtree is squeezed
//! by a linear map into an empty wedge at its attachment vertex.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::{FRAC_PI_3, PI, TAU};

use nalgebra::{DMatrix, DVector};

use crate::geometry::{largest_gap, normalize_angle, wedge_distance, Point, Segment};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanarFailure {
    NotPlanar,
    /// The graph is planar but the numeric layout came out degenerate.
    Degenerate,
}

type Faces = Vec<Vec<usize>>;

/// Edge sets of the biconnected components (bridges are blocks of one edge).
pub fn blocks(g: &Graph) -> Vec<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<EdgeId> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge used to enter, next neighbor index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                let e = g.edge_id(v, w).unwrap();
                if Some(e) == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(&(p, _, _)), Some(e)) = (stack.last(), pe) {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(f) = estack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Faces of a planar embedding of a biconnected graph given by local
/// adjacency lists, each face a simple cycle of vertices.
fn embed_biconnected(adj: &[Vec<usize>]) -> Option<Faces> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let cycle = find_cycle(adj)?;
    let mut in_h = vec![false; n];
    let mut h_edges: std::collections::HashSet<(usize, usize)> = Default::default();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        h_edges.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Faces = vec![cycle.clone(), cycle];
    while h_edges.len() < m {
        // Fragments: chords, then components of the unembedded vertices.
        let mut fragments: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (attachments, path)
        for u in 0..n {
            for &v in &adj[u] {
                if u < v && in_h[u] && in_h[v] && !h_edges.contains(&key(u, v)) {
                    fragments.push((vec![u, v], vec![u, v]));
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        for s in 0..n {
            if in_h[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = s;
            comp[s] = id;
            let mut stack = vec![s];
            let mut attach = Vec::new();
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if in_h[w] {
                        attach.push(w);
                    } else if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            attach.sort_unstable();
            attach.dedup();
            if attach.len() < 2 {
                return None;
            }
            let path = fragment_path(adj, &in_h, &comp, id, attach[0])?;
            fragments.push((attach, path));
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (fi, (attach, _)) in fragments.iter().enumerate() {
            let ok: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| attach.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if ok.is_empty() {
                return None;
            }
            if best.as_ref().is_none_or(|(_, b)| ok.len() < b.len()) {
                let single = ok.len() == 1;
                best = Some((fi, ok));
                if single {
                    break;
                }
            }
        }
        let (fi, ok) = best?;
        let path = &fragments[fi].1;
        let face = faces.swap_remove(ok[0]);
        let (a, b) = (path[0], path[path.len() - 1]);
        let i = face.iter().position(|&x| x == a)?;
        let j = face.iter().position(|&x| x == b)?;
        let l = face.len();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut k = i;
        loop {
            f1.push(face[k]);
            if k == j {
                break;
            }
            k = (k + 1) % l;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut k = j;
        loop {
            f2.push(face[k]);
            if k == i {
                break;
            }
            k = (k + 1) % l;
        }
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &v in path {
            in_h[v] = true;
        }
    }
    Some(faces)
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i == adj[v].len() {
            stack.pop();
            continue;
        }
        let w = adj[v][*i];
        *i += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return Some(cyc);
        }
    }
    None
}

/// Path from attachment `a` through component `id` to another attachment.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], comp: &[usize], id: usize, a: usize) -> Option<Vec<usize>> {
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[a] {
        if !in_h[w] && comp[w] == id && !prev.contains_key(&w) {
            prev.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &w in &adj[x] {
            if in_h[w] && w != a {
                let mut path = vec![w, x];
                let mut y = x;
                while let Some(&p) = prev.get(&y) {
                    path.push(p);
                    if p == a {
                        break;
                    }
                    y = p;
                }
                path.reverse();
                return Some(path);
            }
            if !in_h[w] && comp[w] == id && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Solves the Tutte system: every free vertex at the barycenter of its
/// neighbors, `fixed` vertices pinned.
fn tutte(adj: &[Vec<usize>], fixed: &[(usize, Point)]) -> Vec<Point> {
    let n = adj.len();
    let mut pos = vec![Point::default(); n];
    let mut is_fixed = vec![false; n];
    for &(v, p) in fixed {
        pos[v] = p;
        is_fixed[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_fixed[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        index[v] = i;
    }
    let k = free.len();
    if k == 0 {
        return pos;
    }
    let mut bx = DVector::zeros(k);
    let mut by = DVector::zeros(k);
    for (i, &v) in free.iter().enumerate() {
        for &w in &adj[v] {
            if is_fixed[w] {
                bx[i] += pos[w].x;
                by[i] += pos[w].y;
            }
        }
    }
    if k <= 2500 {
        let mut a = DMatrix::zeros(k, k);
        for (i, &v) in free.iter().enumerate() {
            a[(i, i)] = adj[v].len() as f64;
            for &w in &adj[v] {
                if !is_fixed[w] {
                    a[(i, index[w])] -= 1.0;
                }
            }
        }
        let lu = a.lu();
        if let (Some(x), Some(y)) = (lu.solve(&bx), lu.solve(&by)) {
            for (i, &v) in free.iter().enumerate() {
                pos[v] = Point::new(x[i], y[i]);
            }
        }
    } else {
        // Conjugate gradients on the (symmetric positive definite) reduced
        // Laplacian.
        let apply = |x: &DVector<f64>| {
            let mut y = DVector::zeros(k);
            for (i, &v) in free.iter().enumerate() {
                let mut s = adj[v].len() as f64 * x[i];
                for &w in &adj[v] {
                    if !is_fixed[w] {
                        s -= x[index[w]];
                    }
                }
                y[i] = s;
            }
            y
        };
        for (b, is_x) in [(&bx, true), (&by, false)] {
            let mut x = DVector::zeros(k);
            let mut r = b.clone();
            let mut p = r.clone();
            let mut rr = r.dot(&r);
            let stop = 1e-30 * b.dot(b).max(1e-300);
            for _ in 0..20 * k {
                if rr <= stop {
                    break;
                }
                let ap = apply(&p);
                let alpha = rr / p.dot(&ap);
                x += alpha * &p;
                r -= alpha * &ap;
                let next = r.dot(&r);
                p = &r + (next / rr) * &p;
                rr = next;
            }
            for (i, &v) in free.iter().enumerate() {
                if is_x {
                    pos[v].x = x[i];
                } else {
                    pos[v].y = x[i];
                }
            }
        }
    }
    pos
}

/// A maximal run of degree-2 vertices between two kept vertices.
struct Chain {
    start: usize,
    interior: Vec<usize>,
    end: usize,
    /// Interior vertex kept as a representative, if the chain could not be
    /// replaced by a single edge.
    rep: Option<usize>,
}

/// Crossing-free straight-line drawing of one block (local vertex ids),
/// with `attach` at the origin on the outer face and the whole block inside
/// a cone of angle below pi at the origin.
fn draw_block(adj: &[Vec<usize>], attach: usize) -> Result<Vec<Point>, PlanarFailure> {
    let n = adj.len();
    if n == 2 {
        let mut pos = vec![Point::default(); 2];
        pos[1 - attach] = Point::new(1.0, 0.0);
        return Ok(pos);
    }
    if adj.iter().all(|a| a.len() == 2) {
        // A cycle: convex polygon inscribed in a half circle, so the cone
        // at `attach` is at most a right angle.
        let mut order = vec![attach];
        let mut prev = attach;
        let mut cur = adj[attach][0];
        while cur != attach {
            order.push(cur);
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
        }
        let l = order.len() as f64;
        let mut pos = vec![Point::default(); n];
        for (k, &v) in order.iter().enumerate() {
            let t = PI * k as f64 / (l - 1.0);
            pos[v] = Point::new(1.0 - t.cos(), t.sin());
        }
        return Ok(pos);
    }

    // Contract chains of degree-2 vertices.
    let keep: Vec<bool> = (0..n).map(|v| adj[v].len() != 2 || v == attach).collect();
    let mut chains: Vec<Chain> = Vec::new();
    let mut used: std::collections::HashSet<(usize, usize)> = Default::default();
    for s in 0..n {
        if !keep[s] {
            continue;
        }
        for &first in &adj[s] {
            if used.contains(&(s, first)) {
                continue;
            }
            let mut interior = Vec::new();
            let (mut prev, mut cur) = (s, first);
            while !keep[cur] {
                interior.push(cur);
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            used.insert((s, first));
            used.insert((cur, prev));
            chains.push(Chain { start: s, interior, end: cur, rep: None });
        }
    }
    chains.sort_by_key(|c| c.interior.len());
    let mut cid = vec![usize::MAX; n];
    let mut cadj: Vec<Vec<usize>> = Vec::new();
    let mut corig: Vec<usize> = Vec::new();
    let mut cedges: std::collections::HashSet<(usize, usize)> = Default::default();
    let node = |v: usize, cid: &mut Vec<usize>, cadj: &mut Vec<Vec<usize>>, corig: &mut Vec<usize>| {
        if cid[v] == usize::MAX {
            cid[v] = cadj.len();
            cadj.push(Vec::new());
            corig.push(v);
        }
        cid[v]
    };
    for c in chains.iter_mut() {
        let a = node(c.start, &mut cid, &mut cadj, &mut corig);
        let b = node(c.end, &mut cid, &mut cadj, &mut corig);
        let k = (a.min(b), a.max(b));
        if c.interior.is_empty() || (a != b && !cedges.contains(&k)) {
            cedges.insert(k);
            cadj[a].push(b);
            cadj[b].push(a);
        } else {
            let r = c.interior[c.interior.len() / 2];
            c.rep = Some(r);
            let x = node(r, &mut cid, &mut cadj, &mut corig);
            cadj[a].push(x);
            cadj[x].push(a);
            cadj[b].push(x);
            cadj[x].push(b);
        }
    }

    let faces = embed_biconnected(&cadj).ok_or(PlanarFailure::NotPlanar)?;

    // Ring-and-hub triangulation.
    let mut tadj = cadj.clone();
    let root = cid[attach];
    let mut outer = None;
    for f in &faces {
        let l = f.len();
        let base = tadj.len();
        for _ in 0..=l {
            tadj.push(Vec::new());
        }
        let hub = base + l;
        let link = |a: usize, b: usize, t: &mut Vec<Vec<usize>>| {
            t[a].push(b);
            t[b].push(a);
        };
        for i in 0..l {
            let c = base + i;
            link(c, f[i], &mut tadj);
            link(c, f[(i + 1) % l], &mut tadj);
            link(c, base + (i + 1) % l, &mut tadj);
            link(c, hub, &mut tadj);
        }
        if outer.is_none() {
            if let Some(i) = f.iter().position(|&v| v == root) {
                outer = Some((f[i], f[(i + 1) % l], base + i));
            }
        }
    }
    let (o0, o1, o2) = outer.ok_or(PlanarFailure::Degenerate)?;
    let h = 3f64.sqrt() / 2.0;
    let tpos = tutte(
        &tadj,
        &[(o0, Point::new(0.0, 0.0)), (o1, Point::new(1.0, 0.0)), (o2, Point::new(0.5, h))],
    );

    let mut pos = vec![Point::new(f64::NAN, f64::NAN); n];
    for (i, &v) in corig.iter().enumerate() {
        pos[v] = tpos[i];
    }
    let spread = |pts: &[usize], a: Point, b: Point, pos: &mut Vec<Point>| {
        let k = pts.len() as f64 + 1.0;
        for (i, &v) in pts.iter().enumerate() {
            pos[v] = a.lerp(b, (i as f64 + 1.0) / k);
        }
    };
    for c in &chains {
        let (a, b) = (pos[c.start], pos[c.end]);
        match c.rep {
            None => spread(&c.interior, a, b, &mut pos),
            Some(r) => {
                let i = c.interior.iter().position(|&x| x == r).unwrap();
                let m = pos[r];
                spread(&c.interior[..i], a, m, &mut pos);
                spread(&c.interior[i + 1..], m, b, &mut pos);
            }
        }
    }
    if pos.iter().any(|p| !p.is_finite()) {
        return Err(PlanarFailure::Degenerate);
    }
    Ok(pos)
}

struct Layout<'g> {
    g: &'g Graph,
    blocks: Vec<Vec<EdgeId>>,
    blocks_at: Vec<Vec<usize>>,
}

impl Layout<'_> {
    fn block_vertices(&self, b: usize) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.blocks[b]
            .iter()
            .flat_map(|&e| {
                let (u, v) = self.g.edge(e);
                [u, v]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Draws block `b` and everything hanging off it, with `attach` at the
    /// origin. Returns positions and the edges drawn.
    fn subtree(&self, b: usize, attach: VertexId, root: bool) -> Result<(BTreeMap<VertexId, Point>, Vec<EdgeId>), PlanarFailure> {
        let vs = self.block_vertices(b);
        let local: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vs.len()];
        for &e in &self.blocks[b] {
            let (u, v) = self.g.edge(e);
            adj[local[&u]].push(local[&v]);
            adj[local[&v]].push(local[&u]);
        }
        let bpos = draw_block(&adj, local[&attach])?;
        let mut pos: BTreeMap<VertexId, Point> = vs.iter().map(|&v| (v, bpos[local[&v]])).collect();
        let mut edges = self.blocks[b].clone();
        for &u in &vs {
            if u == attach && !root {
                continue;
            }
            for &c in &self.blocks_at[u] {
                if c == b {
                    continue;
                }
                let (sub, sub_edges) = self.subtree(c, u, false)?;
                let away = if root { None } else { Some(pos[&u]) };
                fit(self.g, &mut pos, &edges, u, &sub, away)?;
                edges.extend(sub_edges);
            }
        }
        Ok((pos, edges))
    }
}

const MAX_DEVIATION: f64 = 40.0 * PI / 180.0;

/// Places the subtree drawing `sub` (attachment at its origin) into an
/// empty wedge at `u` of the current drawing.
fn fit(
    g: &Graph,
    pos: &mut BTreeMap<VertexId, Point>,
    edges: &[EdgeId],
    u: VertexId,
    sub: &BTreeMap<VertexId, Point>,
    away: Option<Point>,
) -> Result<(), PlanarFailure> {
    let pu = pos[&u];
    let rays: Vec<f64> = edges
        .iter()
        .filter_map(|&e| {
            let (a, b) = g.edge(e);
            if a == u {
                Some((pos[&b] - pu).angle())
            } else if b == u {
                Some((pos[&a] - pu).angle())
            } else {
                None
            }
        })
        .collect();
    let (start, width) = largest_gap(&rays);
    let mut gamma = (width / 4.0).min(FRAC_PI_3);
    if away.is_some() {
        gamma = gamma.min(MAX_DEVIATION / 2.0);
    }
    let axis = start + width / 2.0;
    let d1 = Point::from_angle(axis - gamma);
    let d2 = Point::from_angle(axis + gamma);
    let mut reach = f64::INFINITY;
    for &e in edges {
        let (a, b) = g.edge(e);
        if a == u || b == u {
            continue;
        }
        if let Some(d) = wedge_distance(Segment::raw(pos[&a] - pu, pos[&b] - pu), d1, d2) {
            reach = reach.min(d);
        }
    }
    for (&v, &p) in pos.iter() {
        if v != u {
            if let Some(d) = wedge_distance(Segment::raw(p - pu, p - pu), d1, d2) {
                reach = reach.min(d);
            }
        }
    }
    if reach == 0.0 {
        return Err(PlanarFailure::Degenerate);
    }
    let mut radius = reach / 2.0;
    // Seen from the enclosing attachment (at the origin), the new points
    // must stay within a bounded angle of `u`, so the enclosing subtree
    // keeps a cone narrower than pi.
    if let Some(pu) = away {
        let off = normalize_angle(axis - pu.angle() + PI) - PI;
        if off.abs() + gamma > MAX_DEVIATION {
            radius = radius.min(pu.norm() * MAX_DEVIATION.sin());
        }
    }

    // Cone of the subtree at its attachment.
    let angles: Vec<f64> = sub.iter().filter(|(&v, _)| v != u).map(|(_, p)| p.angle()).collect();
    let (gs, gw) = largest_gap(&angles);
    let span = TAU - gw;
    if span >= PI - 1e-9 {
        return Err(PlanarFailure::Degenerate);
    }
    let sub_axis = gs + gw + span / 2.0;
    let beta = span / 2.0;
    let squeeze = if beta > 0.0 && gamma.tan() < beta.tan() { gamma.tan() / beta.tan() } else { 1.0 };
    let local: Vec<(VertexId, Point)> = sub
        .iter()
        .filter(|(&v, _)| v != u)
        .map(|(&v, &p)| {
            let q = p.rotate(-sub_axis);
            (v, Point::new(q.x, q.y * squeeze))
        })
        .collect();
    let extent = local.iter().map(|(_, p)| p.norm()).fold(0.0, f64::max);
    let scale = if extent > radius { radius / extent } else { 1.0 };
    for (v, p) in local {
        pos.insert(v, pu + (p * scale).rotate(axis));
    }
    Ok(())
}

/// A crossing-free straight-line drawing of `g`, or why there is none.
pub fn planar_layout(g: &Graph) -> Result<Vec<Point>, PlanarFailure> {
    let n = g.vertex_count();
    let blocks = blocks(g);
    let mut blocks_at = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        let mut vs: Vec<VertexId> = b.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            blocks_at[v].push(i);
        }
    }
    let layout = Layout { g, blocks, blocks_at };
    let (label, count) = g.component_labels();
    let mut out = vec![Point::default(); n];
    let mut offset = 0.0;
    for c in 0..count {
        let root = (0..n).find(|&v| label[v] == c).unwrap();
        let pos: BTreeMap<VertexId, Point> = match layout.blocks_at[root].first() {
            None => BTreeMap::from([(root, Point::default())]),
            Some(&b) => layout.subtree(b, root, true)?.0,
        };
        let lo_x = pos.values().map(|p| p.x).fold(f64::INFINITY, f64::min);
        let hi_x = pos.values().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        for (v, p) in pos {
            out[v] = Point::new(p.x - lo_x + offset, p.y);
        }
        offset += hi_x - lo_x + 1.0;
    }
    Ok(out)
}

pub fn is_planar(g: &Graph) -> bool {
    blocks(g).iter().all(|b| {
        if b.len() < 9 {
            // Every graph with at most 8 edges is planar.
            return true;
        }
        let mut vs: Vec<VertexId> = b.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
        vs.sort_unstable();
        vs.dedup();
        let local: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vs.len()];
        for &e in b {
            let (u, v) = g.edge(e);
            adj[local[&u]].push(local[&v]);
            adj[local[&v]].push(local[&u]);
        }
        embed_biconnected(&adj).is_some()
    })
}
