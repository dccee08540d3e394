use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("weight {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cannot parse `{token}`: expected {expected}")]
    Parse { token: String, expected: &'static str },
    #[error("invalid flag shape: {0}")]
    InvalidShape(String),
    #[error("invalid blocked weight: {0}")]
    InvalidWeight(String),
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("line bundle {0:?} is not nef")]
    NotNef(Vec<i64>),
    #[error("line bundle {0:?} is not ample")]
    NotAmple(Vec<i64>),
    #[error("line bundle class `{0}` is not a pullback from the ambient flag variety")]
    NotPullback(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index {index} out of range (max {max})")]
    OutOfRange { index: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
