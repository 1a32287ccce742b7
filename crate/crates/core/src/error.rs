use thiserror::Error;

/// Errors raised by pencil computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular transformation: {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A randomized procedure ran out of attempts; this indicates a bug.
    #[error("retry budget exhausted: {0}")]
    RetryExhausted(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Dimension(_) => "dimension",
            Error::Singular(_) => "singular",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Unsupported(_) => "unsupported",
            Error::RetryExhausted(_) => "retry_exhausted",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
