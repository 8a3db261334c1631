//! Command-line front end for the `epr-game-lab` library.
//!
//! Five subcommands cover the workflow: `validate` checks a statistics
//! file against the normalisation and consistency constraints,
//! `analyze-classical` compares the block recipe with the bilinear form
//! and searches for grid equilibria, `analyze-correlated` evaluates a
//! perfectly correlated measure (payoffs, splits, equilibrium verdicts,
//! CHSH), `sweep-m13` grids one residual weight into a CSV, and
//! `simulate` runs a seeded Monte-Carlo experiment.
//!
//! Exit status: 0 on success, 1 when the inputs fail a domain validation,
//! 2 on configuration errors (unreadable files, schema violations, bad
//! flag combinations).  Set `EPR_GAME_LAB_LOG=debug` for progress logs.

mod commands;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Errors carrying the exit-status contract.
#[derive(Debug)]
pub enum CliError {
    /// Domain validation failed (exit 1).
    Validation(String),
    /// The run itself was mis-configured (exit 2).
    Config(String),
}

impl From<epr_game_lab::Error> for CliError {
    fn from(err: epr_game_lab::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "epr-game-lab",
    version,
    about = "Play 2x2 bi-matrix games through four-coin statistics and signed-measure correlation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a statistics file against normalisation and consistency
    /// constraints.
    #[command(name = "validate")]
    Validate(ValidateArgs),
    /// Extract marginals, compare recipe vs bilinear payoffs, and search
    /// for classical grid equilibria.
    #[command(name = "analyze-classical")]
    AnalyzeClassical(ClassicalArgs),
    /// Evaluate a perfectly correlated measure: payoffs, splits,
    /// equilibrium verdicts, CHSH, negativity.
    #[command(name = "analyze-correlated")]
    AnalyzeCorrelated(CorrelatedArgs),
    /// Grid the residual weight m13 and emit one CSV row per point.
    #[command(name = "sweep-m13")]
    SweepM13(SweepArgs),
    /// Sample tosses with a seeded generator and print a convergence
    /// table.
    #[command(name = "simulate")]
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Statistics file: {"stats":{"p":[16 numbers in block order]}}.
    #[arg(long)]
    stats: PathBuf,
    /// Largest residual accepted as clean.
    #[arg(long, default_value_t = epr_game_lab::tol::INPUT)]
    tolerance: f64,
}

#[derive(Args)]
struct ClassicalArgs {
    /// Game file: {"game":{"K":…,"L":…,"M":…,"N":…}}.
    #[arg(long)]
    game: PathBuf,
    /// Statistics file: {"stats":{"p":[16 numbers in block order]}}.
    #[arg(long)]
    stats: PathBuf,
    /// Write the analysis report as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid step of the equilibrium search (within (0, 0.5]).
    #[arg(long, default_value_t = 0.05)]
    sweep_step: f64,
    /// Residual tolerance for marginal extraction.
    #[arg(long, default_value_t = epr_game_lab::tol::INPUT)]
    tolerance: f64,
}

#[derive(Args)]
struct CorrelatedArgs {
    /// Game file: {"game":{"K":…,"L":…,"M":…,"N":…}}.
    #[arg(long)]
    game: PathBuf,
    /// Measure file: {"measure":{"m":[16 weights in row order]}}.
    #[arg(long)]
    measure: PathBuf,
    /// Write the analysis report as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Game file: {"game":{"K":…,"L":…,"M":…,"N":…}}.
    #[arg(long)]
    game: PathBuf,
    /// First m13 value of the grid.
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    sweep_start: f64,
    /// Last m13 value of the grid.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    sweep_stop: f64,
    /// Grid spacing (must be positive).
    #[arg(long, default_value_t = 0.01)]
    sweep_step: f64,
    /// Fixed residual weight m14.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    m14: f64,
    /// Fixed residual weight m15.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    m15: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Game file: {"game":{"K":…,"L":…,"M":…,"N":…}}.
    #[arg(long)]
    game: PathBuf,
    /// Statistics file; defaults to the uniform table when omitted.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Number of rounds to sample.
    #[arg(long, default_value_t = 100_000)]
    rounds: u64,
    /// Seed of the toss generator.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the full toss transcript to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Validate(args) => commands::validate(&args),
        Command::AnalyzeClassical(args) => commands::analyze_classical(&args),
        Command::AnalyzeCorrelated(args) => commands::analyze_correlated(&args),
        Command::SweepM13(args) => commands::sweep_m13(&args),
        Command::Simulate(args) => commands::simulate(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("EPR_GAME_LAB_LOG", "warn"),
    )
    .init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(message)) => {
            eprintln!("validation failure: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Config(message)) => {
            eprintln!("config error: {message}");
            ExitCode::from(2)
        }
    }
}
