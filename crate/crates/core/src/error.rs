//! Error taxonomy shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong short of a mathematical infeasibility verdict.
///
/// Infeasibility is never an `Error`: checks that fail return verdicts with
/// witnesses. Errors cover malformed input, blown enumeration budgets,
/// operations outside the supported range, and internal inconsistencies.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: unparseable spec strings, invalid vertices, bad files.
    #[error("invalid input: {0}")]
    Input(String),

    /// An exhaustive operation would enumerate more vertices than allowed.
    #[error("{count} vertices exceed the enumeration budget of {budget}")]
    Budget { count: String, budget: u64 },

    /// The operation is not defined for these parameters.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Class sizes cannot be pinned down from the matrix alone.
    #[error("class sizes are under-determined: {0}")]
    Underdetermined(String),

    /// An invariant the code relies on was violated; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
