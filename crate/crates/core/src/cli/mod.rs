//! Command-line front end: parameter sweeps, figure data, method comparison and
//! the validation report. Argument parsing lives in the binary; everything here
//! is plain library code so it can be tested without spawning a process.

pub mod compare;
pub mod config;
pub mod figure;
pub mod format;
pub mod svg;
pub mod sweep;
pub mod validate;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{PartialOptions, SweepConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Numerical(#[from] crate::Error),
    #[error("{0} validation check(s) failed")]
    Validation(usize),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 1 usage, 2 numerical failure, 3 validation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
