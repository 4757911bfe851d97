//! `eqbcast` command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 a desk-scale cap was exceeded (raise it with `EQBCAST_CAPS`).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "eqbcast", version, about = "Multiparty equality in the local broadcast model")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CheckArg {
    Exhaustive,
    Random,
    None,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exact LP lower bounds of a graph.
    Bounds {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum or constructed cover certificate.
    Cover {
        graph: PathBuf,
        /// dom, tdom, vc, tvc, wcds or tvcdown.
        kind: String,
        #[arg(long, conflicts_with = "construct")]
        exact: bool,
        /// cycle, tree, grid, hypercube, cubic or wcds.
        #[arg(long)]
        construct: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build a protocol, run it and check it.
    Simulate {
        graph: PathBuf,
        /// pi0, pi2 or single.
        protocol: String,
        #[arg(long, short)]
        k: usize,
        /// Sender set for pi0: a file or `auto` (minimum WCDS).
        #[arg(long, default_value = "auto")]
        set: String,
        /// Total vertex cover for pi2: a file or `auto` (minimum TVC).
        #[arg(long, default_value = "auto")]
        tvc: String,
        /// Host for pi2: explicit JSON file, `implicit:n,m` or `auto`.
        #[arg(long, default_value = "auto")]
        host: String,
        /// Defaults to exhaustive when it fits the cap, random otherwise.
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Write a JSON transcript of one run (the counterexample on failure).
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// CSV comparison table for a corpus file.
    Report {
        corpus: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] eqbcast::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Core(eqbcast::Error::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = eqbcast::Caps::from_env().map_err(CliError::from).and_then(|caps| match cli.command {
        Command::Gen { family, params, format, out } => commands::gen(&family, &params, cli.seed, format, out.as_deref()),
        Command::Bounds { graph, json } => commands::bounds(&graph, json, &caps),
        Command::Cover { graph, kind, exact, construct, out } => {
            commands::cover(&graph, &kind, exact, construct.as_deref(), out.as_deref(), &caps)
        }
        Command::Simulate { graph, protocol, k, set, tvc, host, check, trials, transcript } => {
            let opts = commands::SimulateOptions {
                protocol,
                k,
                set,
                tvc,
                host,
                check,
                trials,
                seed: cli.seed,
                transcript,
            };
            commands::simulate(&graph, &opts, &caps)
        }
        Command::Report { corpus, jobs, out } => report::report(&corpus, jobs, cli.seed, out.as_deref(), &caps),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
