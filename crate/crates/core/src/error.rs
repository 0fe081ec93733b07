use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {requested} exceeds bound {bound}")]
    Bound { requested: usize, bound: usize },

    #[error("malformed simplicial data: {0}")]
    Malformed(String),

    #[error("unknown identifier `{id}` in {context}")]
    UnknownId { id: String, context: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("missing universe entry: {0}")]
    MissingUniverseEntry(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
