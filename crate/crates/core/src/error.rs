use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyEdgeList,

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph has {0} vertices, labeling operations need at least 3")]
    TooSmall(usize),

    #[error("{what} is {actual}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("degenerate family parameters: {0}")]
    DegenerateFamily(String),

    #[error("target vertex set is empty")]
    EmptyTargetSet,

    #[error("vertex {vertex} out of range, graph has {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("labeling mismatch: {0}")]
    LabelingMismatch(String),

    #[error("labeling is not local antimagic")]
    NotLocalAntimagic,

    #[error("class index {index} out of range 1..={max}")]
    ClassOutOfRange { index: usize, max: usize },

    #[error("s = {s} violates the parity rule for a class of size {class_size} (size 1 needs s >= 1, size >= 2 needs even s >= 2)")]
    ParityViolation { s: u64, class_size: u64 },

    #[error("invalid color profile: {0}")]
    InvalidProfile(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
