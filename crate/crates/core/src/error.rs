use thiserror::Error;

/// Errors raised by the transforms and their inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("singular parameters: {0}")]
    Singular(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("numerical integrity: {0}")]
    Integrity(String),
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
