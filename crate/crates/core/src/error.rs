use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("weight is not p-dominant: {0}")]
    NotDominant(String),
    #[error("localization tags differ ({0} vs {1})")]
    TagMismatch(usize, usize),
    #[error("matrix is not nilpotent within {0} powers")]
    NotNilpotent(usize),
    #[error("series guard exceeded after {0} terms")]
    GuardExceeded(usize),
    #[error("check failed: {0}")]
    Check(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Configuration problems map to exit code 2, failed checks to 1.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedType(_)
                | Error::Config(_)
                | Error::NotARoot(_)
                | Error::NotDominant(_)
                | Error::Parse(_)
        )
    }
}
