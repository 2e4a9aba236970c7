use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid exponent {a}/{b}: {reason}")]
    InvalidExponent { a: u32, b: u32, reason: &'static str },

    #[error("word length {len} is not divisible by {divisor}")]
    LengthNotDivisible { len: usize, divisor: usize },

    #[error("position {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subscript {0} is outside 0..8")]
    InvalidSubscript(i64),

    #[error("block {block}, column {column}: expected {expected}, found {found}")]
    ColumnMismatch {
        block: usize,
        column: usize,
        expected: i64,
        found: i64,
    },

    #[error("word is not power-free: {0}")]
    NotPowerFree(String),

    #[error("canonical words failed validation: {0}")]
    Invariant(String),

    #[error("background columns are only periodic from row 1127 on (got row {0})")]
    BelowBackground(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
