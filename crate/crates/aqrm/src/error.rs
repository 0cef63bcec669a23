//! Error type shared by all solver and analysis entry points.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed or out-of-range input: bad parameters, basis ceilings,
    /// level indices past the spectrum, non-ascending grids, …
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A numerical routine failed (eigensolver did not converge, scan point
    /// aborted, …). Never silent: the failing context is in the message.
    #[error("solver failure: {0}")]
    Solver(String),
    /// An operation was called outside its documented domain (e.g. degeneracy
    /// classification below the strong-coupling regime, Taylor expansion at
    /// g = 0, an onset bracket that contains no shape transition).
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable process exit code for CLI front-ends: invalid input 2,
    /// solver failure 3, precondition violation 4.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::Solver(_) => 3,
            Error::Precondition(_) => 4,
        }
    }

    /// Prefix the message with a location (e.g. the failing scan point)
    /// without changing the error class.
    pub fn context(self, ctx: impl std::fmt::Display) -> Error {
        match self {
            Error::InvalidInput(m) => Error::InvalidInput(format!("{ctx}: {m}")),
            Error::Solver(m) => Error::Solver(format!("{ctx}: {m}")),
            Error::Precondition(m) => Error::Precondition(format!("{ctx}: {m}")),
        }
    }
}
