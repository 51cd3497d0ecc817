//! `blockent` — spin-chain block-entropy computations from the shell.
//!
//! Subcommands: `xy-entropy`, `xxz-entropy`, `xxz-crossings`, `analyze`,
//! `oracle-check`. Exit codes: 0 success, 1 claim failure, 2 usage or
//! schema error, 3 numerical failure.

mod commands;
mod config;
mod csvio;
mod manifest;

use blockent_core::Error as CoreError;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CLAIM: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Claim(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Claim(_) => EXIT_CLAIM,
            CliError::Numerical(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter(_)
            | CoreError::InvalidCase { .. }
            | CoreError::IncompleteKernel(_)
            | CoreError::UseEdPath(_)
            | CoreError::BlockTooLarge(_)
            | CoreError::InsufficientData(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "blockent", version, about = "Block entanglement entropy for XY and XXZ spin chains")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Worker threads for sweep points (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Key = value file providing defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cache directory for computed curves (overrides BLOCKENT_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Infinite-chain XY entropy curve with mode extremes and effective ranks.
    XyEntropy(commands::xy::XyEntropyArgs),
    /// Finite XXZ ring entropy profile for the field's winning sector.
    XxzEntropy(commands::xxz::XxzEntropyArgs),
    /// Ground-state level crossings of an XXZ ring as the field sweeps.
    XxzCrossings(commands::crossings::XxzCrossingsArgs),
    /// Scaling, saturation, majorization and property reports over produced files.
    Analyze(commands::analyze::AnalyzeArgs),
    /// Cross-method consistency sweep (correlation vs dense, Bethe vs ED).
    OracleCheck(commands::oracle::OracleCheckArgs),
}

fn main() -> ExitCode {
    // config-file defaults are merged by rewriting argv before clap runs
    let argv = match config::expand_args(std::env::args().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = Cli::parse_from(argv);

    let result = match &cli.command {
        Command::XyEntropy(args) => commands::xy::run(args),
        Command::XxzEntropy(args) => commands::xxz::run(args),
        Command::XxzCrossings(args) => commands::crossings::run(args),
        Command::Analyze(args) => commands::analyze::run(args),
        Command::OracleCheck(args) => commands::oracle::run(args),
    };

    match result {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Claim(m) | CliError::Numerical(m) | CliError::Io(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Install the rayon pool once, honoring --jobs.
pub fn init_pool(jobs: Option<usize>) {
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
