//! Error type shared across the library.
//!
//! Two broad classes matter to callers (and drive CLI exit codes):
//! *format* errors (unparseable or ill-formed input files) and *domain*
//! errors (well-formed machines that fall outside the precondition of an
//! operation, e.g. a non-synchronizing machine handed to `core`, or a
//! bounded search that exhausts its budget).

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text (machine file, word, sequence literal, flag value) does
    /// not parse or violates the file format.
    #[error("format error: {0}")]
    Format(String),

    /// A machine fails structural validation (degenerate cycles, bad
    /// letters, missing edges, ...).
    #[error("invalid machine: {0}")]
    Invalid(String),

    /// The machine is not strongly synchronizing (with a witness).
    #[error("not synchronizing: {0}")]
    NotSynchronizing(String),

    /// A bounded procedure ran out of budget before reaching a verdict.
    #[error("bound exceeded in {op}: {detail}")]
    BoundExceeded { op: String, detail: String },

    /// A state image could not be certified clopen within the bound.
    #[error("image not clopen within bound: {0}")]
    NotClopen(String),

    /// An operation's precondition on group membership fails
    /// (not invertible, not length-preserving, ...).
    #[error("{0}")]
    Domain(String),

    /// An internal cross-check failed; indicates a bug, never silently
    /// swallowed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// CLI exit code for this error: 2 for format errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Format(_) => 2,
            _ => 1,
        }
    }
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
