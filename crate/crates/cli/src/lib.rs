//! Command-line harness: scenario generation, placement, mode comparison,
//! plotting and the acceptance run.

pub mod acceptance;
pub mod args;
pub mod commands;

use std::io::Write;

pub use args::{Cli, Command};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_CRITERIA: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(uavkm::Error),
    #[error("{failed} of {total} acceptance criteria failed")]
    CriteriaFailed { failed: usize, total: usize },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) | CliError::Output(_) => EXIT_DATA,
            CliError::CriteriaFailed { .. } => EXIT_CRITERIA,
        }
    }
}

impl From<uavkm::Error> for CliError {
    fn from(e: uavkm::Error) -> Self {
        match e {
            uavkm::Error::InvalidParams(m) => CliError::Usage(m),
            other => CliError::Data(other),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Generate(a) => commands::generate(a, out),
        Command::Place(a) => commands::place(a, out),
        Command::Compare(a) => commands::compare(a, out),
        Command::Plot(a) => commands::plot(a, out),
        Command::Acceptance(a) => commands::acceptance(a, out),
    }
}
