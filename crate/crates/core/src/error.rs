use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order mismatch: {k} does not divide {n}")]
    OrderMismatch { k: u64, n: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("field not split: {0}")]
    FieldNotSplit(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("verification failed: {0}")]
    Violation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown reference: {0}")]
    Reference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
