//! `radiobook` command-line front end.
//!
//! [`run`] takes the full argument vector (program name first) and returns
//! the process exit code. [`run_with`] is the same with explicit output
//! streams, which is what the tests use.
//!
//! Exit codes: 0 success, 1 `verify` found violations, 2 malformed input or
//! flags, 3 failure after the input was accepted. Errors go to stderr as
//! `error[CODE]: message`, or as a JSON object when `--json` is given.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;

pub use error::{CliError, CliResult, ErrorCode};

/// Environment variable capping solver worker threads.
pub const THREADS_ENV: &str = "RADIOBOOK_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "radiobook",
    version,
    about = "Radio labelings of stacked-book graphs: construction, bounds, verification and exact search"
)]
pub struct Cli {
    /// Machine-readable JSON on stdout (and JSON errors on stderr).
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build G_{m,n} and write it as graph JSON or DOT.
    Construct(ConstructArgs),
    /// Evaluate every closed-form bound at (m, n).
    Bounds(BookArgs),
    /// Label G_{m,n} constructively and report the span.
    Label(LabelArgs),
    /// Check a labeling against the radio condition.
    Verify(VerifyArgs),
    /// Exact radio number by branch and bound.
    Solve(SolveArgs),
    /// Sweep bounds, constructive spans and exact values over (m, n).
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct BookArgs {
    /// Star order (center plus m - 1 spokes).
    #[arg(long)]
    pub m: usize,
    /// Number of pages.
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub book: BookArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
    /// Labeling JSON to show on DOT nodes.
    #[arg(long)]
    pub labeling: Option<PathBuf>,
    /// Write the graph here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// Page-pair order with rotating spokes.
    #[value(name = "paper", alias = "rotation")]
    Rotation,
    GreedyDistance,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[command(flatten)]
    pub book: BookArgs,
    #[arg(long, value_enum, default_value = "paper")]
    pub strategy: StrategyArg,
    /// Write the labeling JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A graph file or stacked-book parameters.
#[derive(Debug, Args)]
pub struct GraphSource {
    /// Graph JSON file.
    #[arg(long, conflicts_with_all = ["m", "n"])]
    pub graph: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Labeling JSON file.
    #[arg(long)]
    pub labeling: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Maximum search nodes.
    #[arg(long, default_value_t = 100_000_000)]
    pub node_budget: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
    /// Only look for spans up to this value.
    #[arg(long)]
    pub upper_start: Option<u64>,
    /// Do not seed the search with the constructive labeling.
    #[arg(long)]
    pub no_seed: bool,
    /// Write the witness labeling JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Values of m: `5..8`, `5,6,8` or `5`.
    #[arg(long = "m-range", value_name = "RANGE")]
    pub m_range: String,
    /// Values of n, same syntax.
    #[arg(long = "n-range", value_name = "RANGE")]
    pub n_range: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Also run the exact solver on each row.
    #[arg(long)]
    pub exact: bool,
    /// Node budget per exact solve.
    #[arg(long, default_value_t = 1_000_000)]
    pub node_budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let wants_json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let message = e.render().to_string();
            let message = message.trim().trim_start_matches("error: ").to_string();
            return report(CliError::new(ErrorCode::EUsage, message), wants_json, err);
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => report(e, cli.json, err),
    }
}

fn report(e: CliError, json: bool, err: &mut dyn Write) -> i32 {
    if json {
        let _ = writeln!(err, "{}", e.to_json());
    } else {
        let _ = writeln!(err, "{e}");
    }
    e.code.exit_code()
}
