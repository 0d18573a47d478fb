use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable index {index} out of range for ambient rank {rank}")]
    VariableOutOfRange { index: usize, rank: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-Hermitian input (defect {0:e})")]
    NotHermitian(f64),
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("ill-conditioned spectrum: {0}")]
    IllConditioned(String),
    #[error("malformed chain complex: {0}")]
    MalformedComplex(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("singular matrix: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
