//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical or physical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine ran but could not reach its accuracy target.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// The eigensolver failed to converge; carries iteration diagnostics.
    #[error("eigensolver convergence failure: {0}")]
    Convergence(String),

    /// Invalid run configuration (bad flag, bad key, bad value).
    #[error("config error: {0}")]
    Config(String),

    /// Cache file rejected (wrong magic, key mismatch, truncation).
    #[error("cache error: {0}")]
    Cache(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
