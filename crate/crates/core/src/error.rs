use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps each variant class onto a distinct process exit code, so
/// constructors should pick the variant by failure class: bad caller input
/// (`InvalidArgument`), non-finite numerics (`Numeric`), misuse of a
/// stateful object (`State`), file access (`Io`), and malformed on-disk
/// data (`Parse`, which carries the byte offset of the first bad byte).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: u64, reason: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn state(msg: impl Into<String>) -> Self {
        Error::State(msg.into())
    }

    pub fn parse(offset: u64, reason: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
