use thiserror::Error;

use crate::model::InvalidReason;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Invalid(InvalidReason),

    #[error("gamma function pole at {}/2", .twice)]
    GammaPole { twice: i64 },

    #[error("effective potential has no interior minimum: {0}")]
    NoMinimum(String),

    #[error("singular potential: {0}")]
    Singular(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for numerical failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence(_) => 2,
            _ => 1,
        }
    }
}

impl From<InvalidReason> for Error {
    fn from(r: InvalidReason) -> Self {
        Error::Invalid(r)
    }
}
