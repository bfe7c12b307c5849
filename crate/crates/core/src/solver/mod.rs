//! Desk-scale decision and construction: branch over bend allocations,
//! subdivide, and look for a straight-line RAC drawing of the subdivision.
//!
//! The inner search can certify "yes" (through the validator) but, outside
//! the tiny-grid mode, never "no"; outcomes are three-valued accordingly.

pub mod alloc;
pub mod construct;
pub mod grid;
pub mod search;

pub use alloc::{enumerate_allocations, subdivide_for_allocation, Allocations, BendAllocation, Subdivision};
pub use construct::three_bend_drawing;
pub use search::{straight_line_rac_search, Search, SearchFailure, SearchMode, SearchOptions};

use crate::drawing::{validate, Drawing, Instance};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub search: SearchOptions,
    /// Stop after this many allocations (the verdict is then unknown).
    pub max_allocations: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { search: SearchOptions::default(), max_allocations: None }
    }
}

impl SolveOptions {
    pub fn with_mode(mode: SearchMode) -> Self {
        Self { search: SearchOptions { mode, ..SearchOptions::default() }, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveVerdict {
    Yes(Drawing),
    /// Only from grid mode, and only relative to that grid.
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub branches: usize,
    pub search_iterations: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub verdict: SolveVerdict,
    /// The allocation behind a yes.
    pub allocation: Option<BendAllocation>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, SolveVerdict::Yes(_))
    }

    pub fn drawing(&self) -> Option<&Drawing> {
        match &self.verdict {
            SolveVerdict::Yes(d) => Some(d),
            _ => None,
        }
    }
}

/// Allocation order: zero bends first, then three on every edge when the
/// budget allows it (drawn directly), then everything else by total.
fn schedule(inst: &Instance) -> impl Iterator<Item = BendAllocation> + '_ {
    let m = inst.graph.edge_count();
    let all3 = BendAllocation { per_edge: vec![3; m] };
    let lead = all3.fits(&inst.budget) && m > 0;
    let front = lead.then(|| all3.clone());
    let zero = BendAllocation::zero(m);
    std::iter::once(zero.clone())
        .chain(front)
        .chain(enumerate_allocations(&inst.budget).filter(move |a| *a != zero && (!lead || *a != all3)))
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> SolveOutcome {
    let g = &inst.graph;
    let tol = opts.search.tol;
    let mut stats = SolveStats::default();
    let mut certified = opts.search.mode == SearchMode::Grid;
    let mut exhausted = true;
    for (idx, alloc) in schedule(inst).enumerate() {
        if opts.max_allocations.is_some_and(|cap| idx >= cap) {
            exhausted = false;
            break;
        }
        stats.branches += 1;
        let candidate = if alloc.per_edge.iter().all(|&b| b == 3) && !alloc.per_edge.is_empty() {
            Some(three_bend_drawing(g))
        } else {
            let Ok(sub) = subdivide_for_allocation(g, &alloc) else { continue };
            let search_opts = SearchOptions {
                seed: opts.search.seed.wrapping_add((idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
                ..opts.search
            };
            let found = straight_line_rac_search(&sub.graph, &search_opts);
            stats.search_iterations += found.iterations;
            match found.outcome {
                Ok(d) => Some(sub.fold_back(g, &d, tol)),
                Err(SearchFailure::GridExhausted) => None,
                Err(_) => {
                    certified = false;
                    None
                }
            }
        };
        if let Some(d) = candidate {
            if validate(g, &d, &inst.budget, tol).is_ok_and(|r| r.is_valid()) {
                return SolveOutcome { verdict: SolveVerdict::Yes(d), allocation: Some(alloc), stats };
            }
            certified = false;
        }
    }
    let verdict = if certified && exhausted { SolveVerdict::No } else { SolveVerdict::Unknown };
    SolveOutcome { verdict, allocation: None, stats }
}
