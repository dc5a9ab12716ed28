//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A structural law failed at construction; names the first violated law.
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("degree {degree} out of range [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("truncation {needed} exceeds available truncation {available}")]
    TruncationTooSmall { needed: usize, available: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration budget exceeded: {0}")]
    CapExceeded(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("not a torsor: {0}")]
    NotATorsor(String),
    #[error("infinite group: {0}")]
    InfiniteGroup(String),
    #[error("missing object: {0}")]
    MissingObject(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
