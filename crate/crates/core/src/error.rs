use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed user input: bad permutation, bad prime set, schema violations.
    #[error("input error: {0}")]
    Input(String),
    /// An enumeration would exceed the configured order cap.
    #[error("group order {order} exceeds the configured cap {cap}")]
    BoundExceeded { order: u64, cap: u64 },
    /// A subgroup argument is not contained in the ambient group.
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    /// A normal subgroup was required.
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    /// The group is not pi-separable for the requested prime set.
    #[error("group is not separable for {0}")]
    NotSeparable(String),
    /// Two characters from different tables were combined.
    #[error("characters belong to different tables")]
    TableMismatch,
    /// A theorem-backed or algebraic invariant failed; the result is never emitted.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    /// Document (de)serialization failure.
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Document(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
