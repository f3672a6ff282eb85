use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// `index` is 0-based; the message shows it 1-based.
    #[error("index {} out of range 1..={bound}", .index + 1)]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("{0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("operands belong to different fields")]
    MixedFields,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: msg.into(),
        }
    }
}
