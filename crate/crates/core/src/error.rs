use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("box lower bound exceeds upper bound in coordinate {0}")]
    InvertedBox(usize),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("effective domain is empty")]
    EmptyDomain,

    #[error("empty point set")]
    EmptySet,

    #[error("+inf times a non-positive scalar is undefined")]
    InfiniteTimesNonPositive,

    #[error("scaling factor must be a positive integer, got {0}")]
    BadScale(i64),

    #[error("unsupported at desk scale: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("iteration guard of {guard} exceeded; input is probably not integrally convex")]
    IterationGuard { guard: u64 },

    #[error("random instance generation gave up after {retries} retries (seed {seed})")]
    RetriesExhausted { seed: u64, retries: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
