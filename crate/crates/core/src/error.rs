use thiserror::Error;

/// Errors raised by the simulator, the image pipeline and the file readers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input data is valid in shape but cannot be processed, e.g. an
    /// all-zero volume that has no normalization.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The requested register would not fit the simulator's budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Gradient descent stopped making progress.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Malformed input file. `line` is 1-based; 0 means "whole input".
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A result failed an internal consistency check.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
