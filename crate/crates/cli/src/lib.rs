//! Implementation of the `slope` command-line tool.
//!
//! Exit-code contract: 0 success, 2 input/config error, 3 numerical/model
//! error, 4 I/O error.

pub mod args;
pub mod commands;
pub mod io;
pub mod report;
pub mod svg;
pub mod tuning_spec;

use std::fmt;

/// Version stamp embedded in every JSON report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    /// Bad inputs, unparseable files, invalid configuration (exit 2).
    Input(String),
    /// Numerical or model-level failures (exit 3).
    Numerical(String),
    /// Filesystem failures (exit 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<slope_core::Error> for CliError {
    fn from(e: slope_core::Error) -> Self {
        use slope_core::Error::*;
        match e {
            DimensionMismatch { .. } | InvalidTuning(_) | InvalidInput(_) => CliError::Input(e.to_string()),
            NotOrthogonal => CliError::Numerical(format!("{e}; pass --general to use the iterative solver")),
            Singular(_) | ZeroPattern => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
