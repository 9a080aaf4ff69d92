use qwalk_core::QwalkError;
use thiserror::Error;

/// Exit-code contract: 2 for invalid parameters, 3 for unreadable or
/// inconsistent files, 1 for anything else.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Format(_) | CliError::Io { .. } => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<QwalkError> for CliError {
    fn from(e: QwalkError) -> Self {
        use QwalkError::*;
        match e {
            InvalidConfig(_)
            | InvalidKey(_)
            | MessageOutOfRange { .. }
            | CoinIndex { .. }
            | TooLarge { .. }
            | EnumerationTooLarge(_)
            | PositionOutOfRange { .. }
            | TooFewPositions(_) => CliError::Validation(e.to_string()),
            Format { .. }
            | NotNormalized(_)
            | AmplitudeCount { .. }
            | DimensionMismatch { .. }
            | DegenerateState
            | InvalidDensity(_) => CliError::Format(e.to_string()),
            HolevoViolation { .. } => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
