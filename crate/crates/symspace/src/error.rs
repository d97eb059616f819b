//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by kernel construction, sampling, statistics, and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A mathematical precondition on the inputs was violated
    /// (parameter out of range, wrong parity, point outside the domain).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical structure check failed (residual too large, matrix not
    /// antisymmetric/self-dual, eigenvalue grouping inconsistent). These
    /// indicate a bug or badly conditioned input rather than a bad argument.
    #[error("numerical check failed: {0}")]
    Numerical(String),

    /// Invalid run configuration (command line or config file).
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
