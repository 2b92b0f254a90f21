use std::path::Path;

use integral_core::Error as CoreError;
use thiserror::Error;

/// CLI failures, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input (exit 2).
    #[error("{0}")]
    Input(String),
    /// Input parses but is inconsistent or insufficient (exit 3).
    #[error("{0}")]
    Semantic(String),
    /// Output could not be written (exit 4).
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Semantic(_) => 3,
            Self::Output(_) => 4,
        }
    }

    pub fn read(path: &Path, err: impl std::fmt::Display) -> Self {
        Self::Input(format!("cannot read {}: {err}", path.display()))
    }

    pub fn write(path: &Path, err: impl std::fmt::Display) -> Self {
        Self::Output(format!("cannot write {}: {err}", path.display()))
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::InvalidPanel(_)
            | CoreError::InvalidWindow(_)
            | CoreError::InvalidConfig { .. }
            | CoreError::Budget(_) => Self::Input(err.to_string()),
            _ => Self::Semantic(err.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
