use thiserror::Error;

use crate::graph::{Edge, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge ({0},{0}) is not allowed")]
    Loop(VertexId),
    #[error("tree has {0} leaves, at least 3 are required")]
    TooFewLeaves(usize),
    #[error("vertex {0} has degree 2 in the tree, not allowed for a strict Halin graph")]
    DegreeTwo(VertexId),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("no ordering with back-degree at most {0} exists")]
    NotDegenerate(usize),
    #[error("orientation does not cover edge {0}")]
    OrientationMissing(Edge),
    #[error("orientation arc {0}->{1} is not an edge of the graph")]
    OrientationExtra(VertexId, VertexId),
    #[error("index function sums to {sum}, expected |E| = {edges}")]
    InvalidIndex { sum: usize, edges: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("matrix has {0} rows, the permanent kernel supports at most 64")]
    TooLarge(usize),
    #[error("balloon is not odd")]
    EvenBalloon,
    #[error("precondition failed: permanent is 0 mod {0}")]
    SingularModP(u64),
    #[error("scale guard: {0}")]
    ScaleGuard(String),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("certificate does not verify: {0}")]
    InvalidCertificate(String),
    #[error("missing weight for {0}")]
    MissingWeight(String),
    #[error("list for {element} has {size} values, at least {needed} required")]
    ListTooSmall { element: String, size: usize, needed: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
