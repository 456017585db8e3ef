use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The index cannot be represented at the given resolution.
    #[error("index {index} is not representable at resolution {resolution}")]
    Resolution { index: u64, resolution: u32 },

    /// A precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The requested resolution exceeds the memory guard.
    #[error("resolution {requested} exceeds the ceiling {ceiling}")]
    ResolutionCeiling { requested: u32, ceiling: u32 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
