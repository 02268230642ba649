mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use grover_exact::GroverError;
use thiserror::Error;

use crate::args::{Cli, Command};

/// Caps the scan worker pool; unset or 0 means one worker per core.
pub const THREADS_ENV: &str = "GROVER_EXACT_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Undefined(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    fn io(e: impl std::fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Undefined(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}

impl From<GroverError> for CliError {
    fn from(e: GroverError) -> Self {
        match e {
            GroverError::NoFeasibleRange { .. } => CliError::Infeasible(e.to_string()),
            GroverError::UndefinedCoherence => CliError::Undefined(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={raw} is not a thread count")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Eval(a) => commands::eval(a)?,
        Command::Scan(a) => commands::scan(a)?,
        Command::Optimize(a) => commands::optimize(a)?,
        Command::Sensitivity(a) => commands::sensitivity(a)?,
        Command::Validate(a) => {
            if !commands::validate(a)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("grover-exact: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
