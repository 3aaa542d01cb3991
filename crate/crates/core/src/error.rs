use thiserror::Error;

/// Errors produced by graph construction, enumeration and estimation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(u32, u32),
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(u32, usize),
    #[error("graph must have at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("vertices {0} and {1} are disconnected in the restricted subgraph")]
    NoPath(u32, u32),
    #[error("edge subset has odd vertices; not an even subgraph")]
    OddBoundary,
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(u32, u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph too large for exact mode: m = {m} exceeds cap {cap}")]
    ExactCapExceeded { m: usize, cap: usize },
    #[error("state has |boundary| = {0}, not in C0 or C2")]
    NotAWormState(usize),
    #[error("total-variation curve did not reach target within 2^{0} steps")]
    MixingIterationCap(u32),
    #[error("invalid canonical path endpoints: {0}")]
    InvalidEndpoints(String),
    #[error("transition does not lie on the canonical path")]
    TransitionOffPath,
    #[error("sample count must be positive")]
    EmptySample,
}

pub type Result<T> = std::result::Result<T, Error>;
