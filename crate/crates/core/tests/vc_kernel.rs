use brac_core::drawing::{bend_count, validate, BendBudget, Instance};
use brac_core::graph::{degree_one_prune, nd_partition, vertex_cover, CoverMode, Graph, VertexCover};
use brac_core::kernel::vc::{
    build_types, nd_to_vertex_cover, size_bound, vc_kernelize, vc_lift_drawing, NdCover, ThresholdRule, VcVerdict,
};
use brac_core::solver::{solve, SearchMode, SolveOptions};
use brac_core::{generate_instance, GenKind};
use proptest::prelude::*;

fn quick() -> SolveOptions {
    let mut o = SolveOptions::with_mode(SearchMode::Numeric);
    o.search.restarts = 32;
    o.search.iters = 1000;
    o.max_allocations = Some(4);
    o
}

/// Cover vertices `0..k`; `members` extra vertices adjacent to all of them.
fn full_type(k: usize, members: usize, b: usize) -> Instance {
    let mut g = Graph::new(k + members);
    for w in k..k + members {
        for c in 0..k {
            g.add_edge(c, w).unwrap();
        }
    }
    Instance::uniform(g, b.min(3) as u8, b).unwrap()
}

#[test]
fn thresholds_for_every_signature_size() {
    for k in 3..=6 {
        for b in 0..=2 {
            let cover = VertexCover::new((0..k).collect());
            for rule in [ThresholdRule::Lemma, ThresholdRule::Theorem] {
                let floor = if rule == ThresholdRule::Lemma { 2 } else { 3 };
                let limit = floor.max(7usize.saturating_sub(k)) + b;
                let at = vc_kernelize(&full_type(k, limit, b), &cover, rule).unwrap();
                assert!(!at.is_reject(), "k={k} b={b} {rule:?}");
                let over = vc_kernelize(&full_type(k, limit + 1, b), &cover, rule).unwrap();
                match over.verdict {
                    VcVerdict::Reject(r) => assert_eq!((r.members, r.limit), (limit + 1, limit)),
                    VcVerdict::Kernel => panic!("k={k} b={b} {rule:?} not rejected"),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kernel_size_bound(k in 2usize..=6, extra in 0usize..60, b in 0usize..=3, seed in any::<u64>()) {
        let inst = generate_instance(GenKind::BoundedVc, k, k + extra, b, seed).unwrap();
        let c = vertex_cover(&inst.graph, CoverMode::Exact);
        prop_assert!(c.size() <= k);
        let r = vc_kernelize(&inst, &c, ThresholdRule::Lemma).unwrap();
        prop_assert!((r.kernel.graph.vertex_count() as u128) <= size_bound(c.size(), b));
    }

    #[test]
    fn types_partition_the_rest(k in 2usize..=5, extra in 0usize..30, seed in any::<u64>()) {
        let inst = generate_instance(GenKind::BoundedVc, k, k + extra, 0, seed).unwrap();
        // Unused cover vertices are isolated; types are defined after pruning.
        let g = degree_one_prune(&inst.graph).graph;
        let c = vertex_cover(&g, CoverMode::Exact);
        let tp = build_types(&g, &c).unwrap();
        let members: usize = tp.types.values().map(Vec::len).sum();
        prop_assert_eq!(members, g.vertex_count() - c.size());
        for (sig, ws) in &tp.types {
            for &w in ws {
                let mut nb = g.neighbors(w).to_vec();
                nb.sort_unstable();
                prop_assert_eq!(&nb, sig);
            }
        }
    }

    #[test]
    fn nd_cover_is_small_and_valid(n in 1usize..12, bits in any::<u64>(), b in 0usize..3) {
        let mut g = Graph::new(n);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (i % 64) & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
                i += 1;
            }
        }
        let m = g.edge_count();
        let budget = BendBudget::uniform(m, b.min(3) as u8, b).unwrap();
        let ndp = nd_partition(&g);
        if let NdCover::Cover(c) = nd_to_vertex_cover(&g, &ndp, &budget) {
            c.check(&g).unwrap();
            prop_assert!(c.size() <= 5 * ndp.size() + b);
        }
    }
}

#[test]
fn two_neighbor_type_trims_to_thirteen() {
    let mut g = Graph::new(52);
    for w in 2..52 {
        g.add_edge(0, w).unwrap();
        g.add_edge(1, w).unwrap();
    }
    let inst = Instance::uniform(g, 0, 0).unwrap();
    let r = vc_kernelize(&inst, &VertexCover::new(vec![0, 1]), ThresholdRule::Lemma).unwrap();
    assert_eq!(r.kernel.graph.vertex_count(), 2 + 13);
}

#[test]
fn solver_drawings_lift() {
    let mut lifted = 0;
    let mut tried = 0;
    for seed in 0..40u64 {
        let k = 2 + (seed % 2) as usize;
        let b = (seed % 2) as usize;
        let inst = generate_instance(GenKind::BoundedVc, k, 30 + seed as usize, b, seed).unwrap();
        let c = vertex_cover(&inst.graph, CoverMode::Exact);
        let r = vc_kernelize(&inst, &c, ThresholdRule::Lemma).unwrap();
        if r.is_reject() {
            continue;
        }
        tried += 1;
        let out = solve(&r.kernel, &quick());
        let Some(d) = out.drawing() else { continue };
        match vc_lift_drawing(&r, d, 1e-9) {
            Ok(up) => {
                let report = validate(&inst.graph, &up, &inst.budget, 1e-9).unwrap();
                assert!(report.is_valid(), "seed {seed}: {}", report.summary(5));
                assert_eq!(bend_count(&up).total, bend_count(d).total);
                lifted += 1;
            }
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
    assert!(tried >= 20 && lifted == tried, "{lifted}/{tried}");
}

#[test]
fn k33_survives_and_k38_is_rejected() {
    let k33 = Instance::uniform(Graph::complete_bipartite(3, 3), 0, 0).unwrap();
    let c = vertex_cover(&k33.graph, CoverMode::Exact);
    let r = vc_kernelize(&k33, &c, ThresholdRule::Lemma).unwrap();
    assert!(!r.is_reject());
    assert_eq!(r.kernel.graph, k33.graph);
    let k38 = Instance::uniform(Graph::complete_bipartite(3, 8), 0, 0).unwrap();
    let c = vertex_cover(&k38.graph, CoverMode::Exact);
    assert!(vc_kernelize(&k38, &c, ThresholdRule::Lemma).unwrap().is_reject());
}
