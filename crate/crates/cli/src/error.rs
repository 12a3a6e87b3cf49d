use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad parameters or input data: exit 2.
    #[error("{0}")]
    Usage(String),
    /// A verification run found the inequality violated: exit 3.
    #[error("{0}")]
    Violation(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(loggas_core::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Violation(_) => 3,
            CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                loggas_core::Error::Domain(_) | loggas_core::Error::InsufficientReps(_) => 2,
                _ => 1,
            },
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<loggas_core::Error> for CliError {
    fn from(e: loggas_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}
