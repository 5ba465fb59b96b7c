//! `pseudolab` command-line front end.
//!
//! Exit status: 0 on success or a passing verdict, 1 on a failing verdict,
//! 2 on configuration, usage or file errors.

mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};
use pseudolab::{ExperimentError, GeomError, GridError, OperatorError, EXAMPLE_NAMES, STUDY_NAMES};

use args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Io(_) | GridError::Csv(_) => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<OperatorError> for CliError {
    fn from(e: OperatorError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Io(_) => CliError::Io(e.to_string()),
            ExperimentError::Grid(g) => g.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn help_footer() -> String {
    format!(
        "Named examples: {}\nStudies: {}\nRegions are given as re_min,re_max,im_min,im_max.\n\
         PSEUDOLAB_THREADS caps the worker threads (0 = all cores).",
        EXAMPLE_NAMES.join(", "),
        STUDY_NAMES.join(", ")
    )
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PSEUDOLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("PSEUDOLAB_THREADS must be a count, got '{raw}'")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let matches = match Cli::command().after_help(help_footer()).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let outcome = init_threads().and_then(|()| commands::run(cli.command));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
