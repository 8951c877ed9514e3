//! Error type shared by every layer of the engine.

use thiserror::Error;

/// Failures raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An interval enclosure could not decide a sign or comparison.
    #[error("undecided comparison: {0}")]
    Undecided(String),
    /// Shapes, degrees or vertices of an algebraic object do not fit together.
    #[error("structural error: {0}")]
    Structural(String),
    /// A textual literal could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// An object expected to be semistable has a destabilizing subobject.
    #[error("object {object} is not semistable; destabilized by {destabilizer}")]
    NotSemistable {
        /// Literal of the tested object.
        object: String,
        /// Literal of the destabilizing subobject.
        destabilizer: String,
    },
    /// A configuration is outside what the engine supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A hypothesis required by the requested construction is not met.
    #[error("refused: {0}")]
    Refused(String),
    /// A constructed structure failed one of its validation clauses.
    #[error("validation failed: {0}")]
    Validation(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
