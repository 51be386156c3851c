use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    RootSystem(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("simple root index {0} out of range")]
    IndexOutOfRange(usize),

    /// Malformed datum document; `at` is a line:column or a field path.
    #[error("{at}: {message}")]
    Parse { at: String, message: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("datum inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid Lie presentation: {0}")]
    Presentation(String),

    #[error("search too large: {0}")]
    TooLarge(String),

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

impl Error {
    pub(crate) fn parse(at: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            at: at.into(),
            message: message.into(),
        }
    }
}
