//! Bend-restricted right-angle-crossing (RAC) drawings: structural
//! parameters, the feedback-edge and vertex-cover kernels with their drawing
//! lifts, a geometric validator and a desk-scale solver.

pub mod drawing;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod planar;
pub mod solver;

pub use drawing::{
    bend_count, crossing_census, validate, BendBudget, Drawing, Instance, ValidationReport,
    Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use geometry::{Point, Segment, DEFAULT_TOL};
pub use graph::{
    degree_one_prune, feedback_edge_set, nd_partition, vertex_cover, CoverMode, FeedbackEdgeSet,
    Graph, NdPartition, VertexCover,
};
pub use kernel::fen::{extract_kernel, lift_drawing, FenKernelResult, SplitRule};
pub use kernel::vc::{nd_to_vertex_cover, vc_kernelize, vc_lift_drawing, NdCover, ThresholdRule, VcKernelResult};
pub use kernel::{lift, Recipe, RecipeDetail};
pub use planar::{is_planar, planar_layout, PlanarFailure};
pub use solver::{solve, BendAllocation, SearchMode, SolveOptions, SolveOutcome, SolveVerdict};
pub use io::{
    generate_instance, parse_drawing, parse_instance, parse_kernel, render_svg, serialize_drawing,
    serialize_instance, serialize_kernel, GenKind, KernelFile, SvgStyle,
};
