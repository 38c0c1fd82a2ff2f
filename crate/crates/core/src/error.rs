use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
