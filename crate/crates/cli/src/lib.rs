//! Clutter file I/O, the Hilbert basis cache and command dispatch behind the
//! `reeskit` binary.

pub mod cache;
pub mod commands;
pub mod io;

use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] reeskit_core::Error),
    #[error("interrupted")]
    Interrupted,
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        use reeskit_core::Error;
        ExitCode::from(match self {
            CliError::Input(_) | CliError::Core(Error::Input(_) | Error::Precondition(_)) => 2,
            CliError::Core(Error::Budget(_)) => 3,
            CliError::Core(Error::Internal(_)) => 1,
            CliError::Interrupted => 130,
        })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
