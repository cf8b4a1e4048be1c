use thiserror::Error;

/// Errors reported by loading, validation, and algorithm entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error("character code {code} out of range for alphabet of size {alphabet}")]
    CharOutOfRange { code: u64, alphabet: u64 },

    #[error("neighbor index {k} out of range: vertex has degree {degree}")]
    NeighborIndex { k: usize, degree: usize },

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonRange(String),

    #[error("no prime found in [{lo}, {hi}]")]
    PrimeRange { lo: u64, hi: u64 },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
