use std::fmt;

use gnpmod_core::Error as CoreError;

/// Failure of a command, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config, or input file. Exit code 2.
    #[error("{0}")]
    Validation(String),
    /// Input larger than an exact method's size cap. Exit code 3.
    #[error("{0}")]
    Cap(String),
    /// Anything else, including a failed verification. Exit code 1.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    pub fn invalid(field: &str, constraint: impl fmt::Display) -> Self {
        CliError::Validation(format!("invalid {field}: {constraint}"))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
