use std::path::PathBuf;

use thiserror::Error;

/// Exit status contract: 0 success, 1 bad input, 2 infeasible.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Input(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("replicate {replicate}: {source}")]
    Replicate {
        replicate: u64,
        #[source]
        source: dkbound_core::Error,
    },
    #[error(transparent)]
    Core(#[from] dkbound_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use dkbound_core::Error as E;
        match self {
            CliError::Infeasible(_) => 2,
            CliError::Core(E::GapViolation(_) | E::NoValidInterval(_) | E::NoFeasibleTransform { .. }) => 2,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
