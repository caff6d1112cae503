use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition (bad vertex index,
    /// malformed parameters, non-clique seed, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A text-format parse failure, with the 1-based line it was detected on.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A search or enumeration exceeded its configured budget.
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
