use std::path::PathBuf;

use bilayer_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("writing to standard output: {0}")]
    Stdout(#[source] std::io::Error),
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(
        "tolerances exceeded, max relative error {max_error:.3e}; report written to {written}"
    )]
    Validation { max_error: f64, written: String },
}

impl CliError {
    /// Short machine-readable reason used in the `error[...]` prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } | CliError::Stdout(_) => "io",
            CliError::Config { .. } => "config",
            CliError::Usage(_) => "usage",
            CliError::Validation { .. } => "validation",
            CliError::Core(e) => match e {
                CoreError::ConstraintViolation(_)
                | CoreError::NonPositiveParameter { .. }
                | CoreError::DegenerateParameters(_) => "constraint",
                CoreError::DomainViolation { .. } | CoreError::NotSquareIntegrable(_) => "domain",
                CoreError::LevelOutOfRange { .. } => "level",
                CoreError::EnvelopeUndefined(_) => "envelope",
                CoreError::WindowTooSmall { .. } => "window",
                CoreError::TailMassTooLarge { .. } | CoreError::ConvergenceFailure { .. } => {
                    "numerics"
                }
                CoreError::InvalidInput(_) => "input",
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Stdout(_) => 1,
            CliError::Validation { .. } => 3,
            _ => 2,
        }
    }
}
