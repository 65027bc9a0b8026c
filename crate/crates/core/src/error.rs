use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("partition {partition} does not fit in a {rows}x{cols} rectangle")]
    NotInRectangle {
        partition: String,
        rows: usize,
        cols: usize,
    },
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid binary string: {0}")]
    InvalidBinaryString(String),
    #[error("unsupported basis for this operation: {0}")]
    UnsupportedBasis(&'static str),
    #[error("non-integral coefficient {0} where an integer was required")]
    NonIntegral(String),
    #[error("Grassmannian context mismatch: Gr({0},{1}) vs Gr({2},{3})")]
    ContextMismatch(usize, usize, usize, usize),
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("negative entry {0} in a probability vector")]
    NegativeEntry(f64),
    #[error("majorization precondition failed: {0}")]
    NotMajorized(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
