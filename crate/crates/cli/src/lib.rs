//! Reproducible experiment pipelines for the `shadowrank` command.

pub mod config;
pub mod output;
pub mod pipeline;

use std::fmt;

pub use config::{Experiment, ExperimentConfig, MethodChoice};
pub use pipeline::{run, CaseSummary, ModesSummary, Stage, Summary};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(shadowrank::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
            Self::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(m) => write!(f, "configuration error: {m}"),
            Self::Numeric(e) => write!(f, "numeric failure: {e}"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<shadowrank::Error> for CliError {
    fn from(e: shadowrank::Error) -> Self {
        match e {
            shadowrank::Error::Parameter(m) => Self::Config(m),
            shadowrank::Error::Io(e) => Self::Io(e),
            other => Self::Numeric(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}
