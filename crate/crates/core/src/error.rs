use thiserror::Error;

/// Errors raised by the library.
///
/// Domain violations carry the name of the operation that rejected its input,
/// so messages surfaced through the CLI point at the failing step.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid discriminant {d}: {reason}")]
    Discriminant { d: i64, reason: String },

    #[error("{op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{op}: argument lies on a pole or zero ({msg})")]
    Singular { op: &'static str, msg: String },

    #[error("{op}: no convergence after {iters} iterations")]
    NoConvergence { op: &'static str, iters: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { op, msg: msg.into() }
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
