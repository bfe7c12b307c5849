use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid bend budget: {0}")]
    Budget(String),

    #[error("drawing does not match the graph: {0}")]
    Structure(String),

    #[error("degenerate geometry: {0}")]
    Geometry(String),

    #[error("point ({x}, {y}) lies on a feature")]
    PointOnFeature { x: f64, y: f64 },

    #[error("not a vertex cover: edge {0}-{1} is uncovered")]
    NotACover(VertexId, VertexId),

    #[error("vertex {0} has degree one; prune the graph first")]
    DegreeOneVertex(VertexId),

    #[error("non-cover vertex {vertex} has {neighbors} cover neighbors; prune the graph first")]
    SparseType { vertex: VertexId, neighbors: usize },

    #[error("kernel drawing is not a valid drawing of the kernel: {0}")]
    InvalidKernelDrawing(String),

    #[error(
        "long path {start}..{end} needs {needed} relocatable vertices but only has {available}"
    )]
    InsufficientPathVertices {
        start: VertexId,
        end: VertexId,
        needed: usize,
        available: usize,
    },

    #[error("type with cover neighbors {u},{v} has no bend-free member without crossings in the kernel drawing ({detail})")]
    NoCrossingFreeMember { u: VertexId, v: VertexId, detail: String },

    #[error("lifted drawing failed validation: {0}")]
    LiftFailed(String),

    #[error("recipe does not match this kernel: {0}")]
    Recipe(String),

    #[error("infeasible generator parameters: {0}")]
    Generator(String),
}
