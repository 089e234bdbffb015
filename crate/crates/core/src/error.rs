use thiserror::Error;

/// Errors surfaced by the engine. `Usage` covers violated preconditions on
/// caller input, `Internal` marks broken invariants that indicate a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("degree window exceeded: {0}")]
    WindowExceeded(String),
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
