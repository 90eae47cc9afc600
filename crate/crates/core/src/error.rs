use thiserror::Error;

use crate::multigraph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge id {0} out of range (edge ids must be < 64)")]
    EdgeIdOutOfRange(EdgeId),
    #[error("edge {0} is a loop and cannot be collapsed")]
    LoopCollapse(EdgeId),
    #[error("edge set {0} contains a cycle")]
    NotAForest(String),
    #[error("vertex {0} does not have valence two with distinct adjacent edges")]
    NotValenceTwo(VertexId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("map is not order-preserving: {0} <= {1} but images are not comparable in that order")]
    NotOrderPreserving(String, String),
    #[error("closure retraction rejected: {0}")]
    RetractionRejected(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("unsupported rank {0}")]
    UnsupportedRank(usize),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported export: {0}")]
    UnsupportedExport(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
