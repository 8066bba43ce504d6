//! Command-line harness: argument parsing, report formatting and the code catalog.

pub mod args;
pub mod catalog;
pub mod commands;
pub mod output;

use std::fs;

use thiserror::Error;

pub use args::{Cli, Format};
pub use catalog::CatalogEntry;
pub use commands::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Code(#[from] isodual::CodeError),
    #[error(transparent)]
    Curve(#[from] isodual::CurveError),
    #[error(transparent)]
    Divisor(#[from] isodual::DivisorError),
    #[error(transparent)]
    Field(#[from] isodual::FieldError),
    #[error(transparent)]
    Linalg(#[from] isodual::LinalgError),
    #[error(transparent)]
    Cyclotomic(#[from] isodual::CyclotomicError),
    #[error(transparent)]
    Poly(#[from] isodual::poly::PolyParseError),
    #[error("Usage: {0}")]
    Usage(String),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("Csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("Threads: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// Module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            CliError::Code(_) => "code-factory",
            CliError::Curve(_) => "curve-models",
            CliError::Divisor(_) => "divisor-calculus",
            CliError::Field(_) | CliError::Poly(_) => "finite-field",
            CliError::Linalg(_) => "gf-linalg",
            CliError::Cyclotomic(_) => "cyclotomic-calc",
            _ => "cli-harness",
        }
    }
}

/// Runs the command on a pool of `--threads` workers.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t);
    }
    builder.build()?.install(|| commands::dispatch(cli))
}

/// Runs, writes the report to `--out` or stdout, and returns the exit code.
pub fn execute(cli: &Cli) -> Result<u8, CliError> {
    let report = run(cli)?;
    let mut text = match cli.format {
        Format::Json => commands::render_json(&report)?,
        Format::Csv => output::to_csv(&report.csv_rows())?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report.exit)
}
