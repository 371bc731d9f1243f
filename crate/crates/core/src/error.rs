use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid string: {0}")]
    InvalidString(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid field modulus {0}: must be a prime in (2^20, 2^63)")]
    InvalidModulus(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("the product is not zero; there is no violated inequality to find")]
    NotVanishing,

    #[error("no consistent generic sample after {0} attempts")]
    GenericityExhausted(usize),

    #[error("descent produced an inconsistent state: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
