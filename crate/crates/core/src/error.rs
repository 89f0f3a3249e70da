use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("no Moore graph of valency {0} can be constructed (only 2, 3 and 7 are known)")]
    UnknownMooreGraph(usize),

    #[error("a Moore graph of valency 57 has unknown existence and cannot be constructed")]
    MooreExistenceUnknown,

    #[error("infeasible strongly regular parameters: {0}")]
    InfeasibleParameters(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph must be connected")]
    Disconnected,

    #[error("enumeration size guard exceeded: {needed} configurations > limit {limit}")]
    SizeGuard { needed: u128, limit: u128 },

    #[error("vertex {0} is not a valid sink")]
    BadSink(usize),

    #[error("parameters contradict: {0}")]
    Contradiction(String),

    #[error("constraint system leaves {0} free parameters; cannot express as one-parameter families")]
    Underdetermined(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
