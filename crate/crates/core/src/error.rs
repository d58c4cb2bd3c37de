use thiserror::Error;

/// Errors raised by the algebra, construction and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),

    #[error("({0}, {1}) is not a two-row partition")]
    InvalidPartition(u64, u64),

    #[error("partitions {0:?} and {1:?} have different sizes")]
    SizeMismatch((u64, u64), (u64, u64)),

    #[error("operands live in different algebras: {0} vs {1}")]
    ContextMismatch(String, String),

    #[error("index {h} outside [{lo}, {hi}]")]
    OutOfRange { h: u64, lo: u64, hi: u64 },

    #[error("characteristic {0} is not supported here, need 3")]
    UnsupportedCharacteristic(u32),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed element: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
