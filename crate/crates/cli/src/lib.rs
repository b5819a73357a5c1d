//! Experiment front end: config parsing, deterministic runners, CSV
//! emission, and the preset figure suite.

pub mod config;
pub mod figures;
pub mod run;
pub mod table;

use std::fmt;

/// Process-level failure with the exit code contract: 1 for configuration
/// problems, 2 for violated numerical invariants.
#[derive(Debug)]
pub enum AppError {
    Config(config::ConfigError),
    Engine(switchwalk::Error),
    Io(std::io::Error),
    Verify(String),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Config(e) => write!(f, "config error: {e}"),
            AppError::Engine(e) => write!(f, "engine error: {e}"),
            AppError::Io(e) => write!(f, "io error: {e}"),
            AppError::Verify(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<config::ConfigError> for AppError {
    fn from(e: config::ConfigError) -> Self {
        AppError::Config(e)
    }
}

impl From<switchwalk::Error> for AppError {
    fn from(e: switchwalk::Error) -> Self {
        AppError::Engine(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl AppError {
    /// 1 for anything the user can fix in the config or environment, 2 for
    /// numerical invariants the run itself violated.
    pub fn exit_code(&self) -> u8 {
        use switchwalk::Error as E;
        match self {
            AppError::Config(_) | AppError::Io(_) => 1,
            AppError::Verify(_) => 2,
            AppError::Engine(e) => match e {
                E::DestructiveInterference { .. }
                | E::DegenerateState
                | E::DegeneratePostselection { .. }
                | E::Channel(_)
                | E::Domain(_)
                | E::UnnormalizedDistribution { .. }
                | E::DimMismatch { .. } => 2,
                _ => 1,
            },
        }
    }
}
