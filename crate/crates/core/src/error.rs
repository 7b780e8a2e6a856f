use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("not left-resolving: edges {first} and {second} share label {label:?} into vertex {target}")]
    NotLeftResolving {
        first: usize,
        second: usize,
        label: String,
        target: usize,
    },

    #[error("enumeration budget exhausted at level {level} after {count} words")]
    Budget { level: usize, count: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("word of length {len} exceeds truncation depth {depth}")]
    Depth { len: usize, depth: usize },

    #[error("cannot contract: {0}")]
    Contract(String),

    #[error("system is not predecessor-separated at level {level} (vertices {first} and {second})")]
    NotSeparated {
        level: usize,
        first: usize,
        second: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
