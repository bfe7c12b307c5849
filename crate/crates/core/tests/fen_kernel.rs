use std::collections::{BTreeSet, HashMap};

use brac_core::drawing::{bend_count, validate, BendBudget, Instance};
use brac_core::graph::{degree_one_prune, feedback_edge_set, Graph};
use brac_core::kernel::fen::{build_path_partition, extract_kernel, lift_drawing, SplitRule};
use brac_core::solver::{solve, SearchMode, SolveOptions};
use brac_core::{generate_instance, GenKind};
use proptest::prelude::*;

fn quick() -> SolveOptions {
    let mut o = SolveOptions::with_mode(SearchMode::Numeric);
    o.search.restarts = 64;
    o.search.iters = 1000;
    o.max_allocations = Some(8);
    o
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_is_exact(fen in 0usize..=5, n in 6usize..60, seed in any::<u64>()) {
        let fen = fen.min(n * (n - 1) / 2 - (n - 1));
        let inst = generate_instance(GenKind::BoundedFen, fen, n, 0, seed).unwrap();
        let pruned = degree_one_prune(&inst.graph);
        let g = &pruned.graph;
        let f = feedback_edge_set(g);
        prop_assert_eq!(f.size(), fen);
        let pp = build_path_partition(g, &f).unwrap();
        prop_assert!(pp.paths.len() <= 4 * fen);
        prop_assert!(pp.special.len() <= 4 * fen);

        // Independent oracle: special = endpoints of F plus vertices of
        // degree >= 3 once F is gone.
        let mut deg = vec![0usize; g.vertex_count()];
        let in_f: BTreeSet<usize> = f.edges.iter().copied().collect();
        let mut expected = BTreeSet::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if in_f.contains(&e) {
                expected.insert(u);
                expected.insert(v);
            } else {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        expected.extend((0..g.vertex_count()).filter(|&v| deg[v] >= 3));
        let special: BTreeSet<usize> = pp.special.iter().copied().collect();
        prop_assert_eq!(&special, &expected);

        let mut seen: HashMap<usize, usize> = HashMap::new();
        for p in &pp.paths {
            prop_assert!(special.contains(&p[0]) && special.contains(p.last().unwrap()));
            prop_assert!(p[1..p.len() - 1].iter().all(|v| !special.contains(v)));
            for w in p.windows(2) {
                let e = g.edge_id(w[0], w[1]).unwrap();
                *seen.entry(e).or_default() += 1;
            }
        }
        for e in 0..g.edge_count() {
            let count = seen.get(&e).copied().unwrap_or(0);
            prop_assert_eq!(count, usize::from(!in_f.contains(&e)));
        }
        let lengths = pp.lengths();
        prop_assert!(lengths.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn kernel_bounds(fen in 1usize..=4, n in 10usize..400, b in 0usize..3, seed in any::<u64>()) {
        let inst = generate_instance(GenKind::BoundedFen, fen, n, b, seed).unwrap();
        for rule in [SplitRule::Proof, SplitRule::Literal] {
            let r = extract_kernel(&inst, rule).unwrap();
            prop_assert_eq!(r.fen, fen);
            prop_assert!((r.kernel.graph.edge_count() as u128) <= r.size_bound());
            // Counting the gap path as short breaks the per-step chain.
            if rule == SplitRule::Proof {
                let (sum, bound) = r.chain();
                prop_assert!(sum <= bound);
            }
            prop_assert_eq!(r.kernel.budget.total, b);
        }
    }
}

#[test]
fn solver_drawings_lift() {
    let mut lifted = 0;
    for seed in 0..30u64 {
        let fen = 1 + (seed % 2) as usize;
        let b = (seed % 3) as usize;
        let inst = generate_instance(GenKind::BoundedFen, fen, 25 + (seed as usize % 40), b, seed).unwrap();
        let r = extract_kernel(&inst, SplitRule::Proof).unwrap();
        let out = solve(&r.kernel, &quick());
        let Some(d) = out.drawing() else { continue };
        let up = lift_drawing(&r, d, 1e-9).unwrap();
        let report = validate(&inst.graph, &up, &inst.budget, 1e-9).unwrap();
        assert!(report.is_valid(), "seed {seed}: {}", report.summary(5));
        assert_eq!(bend_count(&up).total, bend_count(d).total);
        lifted += 1;
    }
    assert_eq!(lifted, 30);
}

#[test]
fn theta_with_a_long_path() {
    // Two short paths and one of length 200 between the same pair.
    let mut g = Graph::new(2);
    let mut prev = 0;
    for _ in 0..199 {
        let v = g.add_vertex();
        g.add_edge(prev, v).unwrap();
        prev = v;
    }
    g.add_edge(prev, 1).unwrap();
    for len in [2, 3] {
        let mut prev = 0;
        for _ in 0..len - 1 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        g.add_edge(prev, 1).unwrap();
    }
    let m = g.edge_count();
    let inst = Instance::new(g, BendBudget::uniform(m, 1, 1).unwrap()).unwrap();
    let r = extract_kernel(&inst, SplitRule::Proof).unwrap();
    assert!(r.kernel.graph.edge_count() < 10);
    let out = solve(&r.kernel, &quick());
    let d = out.drawing().unwrap();
    let up = lift_drawing(&r, d, 1e-9).unwrap();
    assert!(validate(&inst.graph, &up, &inst.budget, 1e-9).unwrap().is_valid());
}

/// K5 plus long paths between some of its vertex pairs: the kernel contains
/// K5, so every kernel drawing has crossings the paths must route around.
fn k5_with_paths(pairs: &[(usize, usize, usize)]) -> Instance {
    let mut g = Graph::complete(5);
    for &(u, v, len) in pairs {
        let mut prev = u;
        for _ in 0..len - 1 {
            let w = g.add_vertex();
            g.add_edge(prev, w).unwrap();
            prev = w;
        }
        g.add_edge(prev, v).unwrap();
    }
    let m = g.edge_count();
    Instance::new(g, BendBudget::straight(m)).unwrap()
}

#[test]
fn long_paths_around_crossings() {
    let cases: [&[(usize, usize, usize)]; 4] = [
        &[(0, 1, 400)],
        &[(0, 2, 500), (3, 4, 500)],
        &[(1, 3, 2000)],
        &[(0, 1, 600), (0, 1, 700), (2, 4, 800)],
    ];
    for (i, pairs) in cases.iter().enumerate() {
        let inst = k5_with_paths(pairs);
        let r = extract_kernel(&inst, SplitRule::Proof).unwrap();
        // A feedback edge may land inside a path and stay in the kernel.
        assert!(r.kernel.graph.vertex_count() <= 5 + 2 * pairs.len(), "case {i}");
        for seed in 0..3 {
            let mut opts = quick();
            opts.search.seed = seed;
            let out = solve(&r.kernel, &opts);
            let d = out.drawing().expect("K5 is drawable");
            let up = lift_drawing(&r, d, 1e-9).unwrap();
            let report = validate(&inst.graph, &up, &inst.budget, 1e-9).unwrap();
            assert!(report.is_valid(), "case {i} seed {seed}: {}", report.summary(5));
            assert!(report.crossing_count > 0);
        }
    }
}
