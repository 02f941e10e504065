//! Command-line front end: `solve`, `cond` and `verify`.

pub mod parse;
pub mod report;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::conditionality::{diagonal_entries, eigen_ratio_diagonal, kappa_beta, kappa_gamma};
use crate::error::Error as CoreError;
use crate::scalar::{Backend, Rational, Scalar};
use crate::solver::{solve_axb, solve_homogeneous};

use parse::{read_matrix, read_vector};
use report::{CondReport, SolveReport};
use verify::{run_verify, VerifyConfig, DEFAULT_DIM_MAX, DEFAULT_SEED, DEFAULT_TRIALS};

pub const BACKEND_ENV: &str = "OUTERSOLVE_BACKEND";

/// Exit status for input, parse and shape errors.
pub const EXIT_INPUT_ERROR: i32 = 2;
/// Exit status when `verify` finds a failing check.
pub const EXIT_VERIFY_FAILED: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::DimensionMismatch { expected, found } => {
                CliError::Shape(format!("expected dimension {expected}, found {found}"))
            }
            other => CliError::Core(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "outersolve",
    version,
    about = "Solve linear systems as outer products of hyperplanes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve Ax = b (with --rhs) or Ax = 0 (with --homogeneous, A is n x (n+1)).
    Solve(SolveArgs),
    /// Angular conditionality of the rows of A (and of [A | -b] with --rhs).
    Cond(CondArgs),
    /// Cross-check the solver against elimination on random integer systems.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_name = "FILE")]
    pub matrix: PathBuf,
    #[arg(
        long,
        value_name = "FILE",
        required_unless_present = "homogeneous",
        conflicts_with = "homogeneous"
    )]
    pub rhs: Option<PathBuf>,
    #[arg(long)]
    pub homogeneous: bool,
    #[arg(long, env = BACKEND_ENV, default_value = "float")]
    pub backend: Backend,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CondArgs {
    #[arg(long, value_name = "FILE")]
    pub matrix: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub rhs: Option<PathBuf>,
    #[arg(long, env = BACKEND_ENV, default_value = "float")]
    pub backend: Backend,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_DIM_MAX, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..=12))]
    pub dim_max: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    json: serde_json::Value,
    text: String,
) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json).expect("serializable")
        )?,
        Format::Text => write!(out, "{text}")?,
    }
    Ok(())
}

fn solve_with<S: Scalar>(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let a = read_matrix::<S>(&args.matrix)?;
    let b = match &args.rhs {
        Some(path) => Some(read_vector::<S>(path)?),
        None => None,
    };
    let start = Instant::now();
    let sol = match &b {
        Some(b) => solve_axb(&a, b),
        None => solve_homogeneous(&a),
    }
    .map_err(CliError::from_core)?;
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    // conditionality is advisory here; a single row has no angles
    let cond = match &b {
        Some(b) => kappa_beta(&a, b),
        None => kappa_gamma(&a),
    }
    .ok();
    let report = SolveReport::new(&sol, cond.as_ref(), args.backend, timing_ms);
    emit(out, args.format, report.to_json(), report.to_text())
}

fn cond_with<S: Scalar>(args: &CondArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let a = read_matrix::<S>(&args.matrix)?;
    let report = match &args.rhs {
        Some(path) => kappa_beta(&a, &read_vector::<S>(path)?),
        None => kappa_gamma(&a),
    }
    .map_err(CliError::from_core)?;
    let eigen = diagonal_entries(&a).and_then(|d| eigen_ratio_diagonal(&d).ok());
    let report = CondReport {
        report,
        eigen_ratio_diagonal: eigen,
        backend: args.backend,
    };
    emit(out, args.format, report.to_json(), report.to_text())
}

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Solve(args) => {
            match args.backend {
                Backend::Float => solve_with::<f64>(args, out)?,
                Backend::Exact => solve_with::<Rational>(args, out)?,
            }
            Ok(0)
        }
        Command::Cond(args) => {
            match args.backend {
                Backend::Float => cond_with::<f64>(args, out)?,
                Backend::Exact => cond_with::<Rational>(args, out)?,
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let summary = run_verify(VerifyConfig {
                trials: args.trials,
                dim_max: args.dim_max,
                seed: args.seed,
            });
            emit(out, args.format, summary.to_json(), summary.to_text())?;
            Ok(if summary.ok() { 0 } else { EXIT_VERIFY_FAILED })
        }
    }
}
