use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error)]
pub enum WmstError {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge} duplicates edge {first} ({u}, {v})")]
    DuplicateEdge {
        edge: EdgeId,
        first: EdgeId,
        u: VertexId,
        v: VertexId,
    },
    #[error("edge {edge} has a non-positive {which} weight")]
    NonpositiveWeight { edge: EdgeId, which: &'static str },
    #[error("edge {edge} is missing its {which} weight")]
    MissingWeight { edge: EdgeId, which: &'static str },
    #[error("edge {edge} references vertex {vertex} but n = {n}")]
    VertexOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        n: usize,
    },
    #[error("a graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("cannot parse weight {0:?}")]
    ParseWeight(String),
    #[error("weight {0:?} does not fit the scalar type")]
    WeightOutOfRange(String),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("edge {0} is already in the tree")]
    EdgeInTree(EdgeId),
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invalid arrival order: {0}")]
    BadOrder(String),
    #[error("algorithm {algorithm} produced a non-spanning result: {detail}")]
    NotSpanning { algorithm: String, detail: String },
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed trace line {line}: {detail}")]
    TraceParse { line: usize, detail: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = WmstError> = std::result::Result<T, E>;
