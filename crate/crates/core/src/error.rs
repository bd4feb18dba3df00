use thiserror::Error;

use crate::graph::Extended;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text could not be decoded. `offset` is a byte offset into the input.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    /// A precondition of the requested operation does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// Chordless-cycle enumeration hit its cap, so a connectivity value could
    /// not be certified. The best cut found so far is reported as an upper bound.
    #[error("cycle enumeration capped after {cycles} cycles; value is at most {upper_bound}")]
    Inexact { cycles: usize, upper_bound: Extended },

    /// A randomized procedure ran out of attempts.
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl Error {
    pub(crate) fn format(offset: usize, message: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
