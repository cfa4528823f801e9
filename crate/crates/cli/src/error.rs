use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures that end a command. Each maps to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, out-of-domain parameters.
    #[error("{0}")]
    Invalid(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] swapnet_core::Error),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for a negative verdict raised as an error, 2 for invalid input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(swapnet_core::Error::NotInEquilibrium(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
