use thiserror::Error;

use crate::{EdgeId, VertexId};

/// Structural problems with an embedded graph or its text encoding.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("self-loop on vertex {0} (input graphs must be simple)")]
    SelfLoop(VertexId),
    #[error("parallel edges between {0} and {1} (input graphs must be simple)")]
    ParallelEdge(VertexId, VertexId),
    #[error("inconsistent rotation at vertex {vertex}: {msg}")]
    Rotation { vertex: VertexId, msg: String },
    #[error("rotation system is not planar: V - E + W = {got}, expected {expected}")]
    NotPlanar { got: i64, expected: i64 },
    #[error("face walk starting at half-edge {0} does not close")]
    OpenFace(usize),
    #[error("euler counts ({v}, {e}, {f}) do not describe a graph")]
    EulerInconsistent { v: usize, e: usize, f: usize },
    #[error("{kind} needs n >= {min}, got {n}")]
    TooSmall { kind: &'static str, min: usize, n: usize },
}

/// Misuse of a decremental connectivity instance.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DcError {
    #[error("edge {0} is already deleted")]
    DeadEdge(EdgeId),
    #[error("edge {0} is an expansion edge and cannot be deleted")]
    Undeletable(EdgeId),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("micro instance capacity exceeded: t = {0} > 64")]
    MicroCapacity(usize),
    #[error("micro instances need simple graphs (duplicate pair {0}-{1})")]
    MicroNotSimple(VertexId, VertexId),
    #[error("fresh identifier space exhausted")]
    IdOverflow,
    #[error("division: {0}")]
    Division(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
