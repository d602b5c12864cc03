use thiserror::Error;

/// Errors raised by the algebra, calculus and homology layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("roster mismatch: {0}")]
    RosterMismatch(String),
    #[error("inhomogeneous expression; offending terms: {0}")]
    Inhomogeneous(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("localized input needs a truncation window")]
    WindowRequired,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
