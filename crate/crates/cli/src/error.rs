use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Command failure, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Failed(_) => 1,
        }
    }

    pub fn io(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
        move |source| CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn csv(path: &Path) -> impl FnOnce(csv::Error) -> CliError + '_ {
        move |e| {
            if e.is_io_error() {
                match e.into_kind() {
                    csv::ErrorKind::Io(source) => CliError::Io { path: path.to_path_buf(), source },
                    _ => unreachable!("checked io kind"),
                }
            } else {
                CliError::Invalid(format!("{}: {e}", path.display()))
            }
        }
    }
}

impl From<mipt_core::Error> for CliError {
    fn from(e: mipt_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
