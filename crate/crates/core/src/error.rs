use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("basis rows are linearly dependent")]
    SingularBasis,

    #[error("outside supported envelope: {0}")]
    Envelope(String),

    #[error("shape does not contain the origin")]
    MissingOrigin,

    #[error("duplicate point in shape: {0}")]
    DuplicatePoint(String),

    #[error("lattice does not tile the shape: {0}")]
    NotATiling(String),

    #[error("walk does not cover the shape; cycle length {cycle_length}")]
    NotAFolding { cycle_length: usize },

    #[error("direction must be a nonzero vector over {{-1,0,1}}")]
    InvalidDirection,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("discrete log of zero is undefined")]
    ZeroDlog,

    #[error("{0}")]
    Domain(String),

    #[error("redundancy bound violated: {0}")]
    RedundancyBound(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn envelope(msg: impl Into<String>) -> Self {
        Error::Envelope(msg.into())
    }
}
