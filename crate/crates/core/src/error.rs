use thiserror::Error;

/// Errors raised by the library. Check failures that belong in a report are
/// never raised as errors; these variants signal invalid input or a broken
/// internal invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("non-integral genus: {0}")]
    NonIntegralGenus(String),

    #[error("tuple product is not the identity")]
    NotProductOne,

    #[error("generated group is not transitive")]
    Intransitive,

    #[error("unknown table row: {0}")]
    UnknownRow(String),

    #[error("parameters violate the row constraints: {0}")]
    Congruence(String),

    #[error("configured cap exceeded: {0}")]
    CapExceeded(String),

    #[error("infeasible query: {0}")]
    Infeasible(String),

    #[error("no realization found: {0}")]
    NotFound(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
