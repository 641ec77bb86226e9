use std::path::PathBuf;

use clap::{Parser, Subcommand};

use spectilt_cli::{exit_code, run_session, RunOptions};
use spectilt_core::error::Error;

/// Exact commutative algebra over polynomial quotient rings: resolutions,
/// Bass invariants, transposes, Ext/Tor, and tilting/cotilting class tools,
/// driven by session files.
#[derive(Parser)]
#[command(name = "spectilt", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a session file and print its reports
    Run {
        /// Path to the session file
        file: PathBuf,
        /// Emit one JSON document instead of text blocks
        #[arg(long)]
        json: bool,
        /// Worker threads for independent per-prime / per-method computations
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Cap on free-resolution length (default: 2 * #variables + 2)
        #[arg(long, value_name = "K")]
        pd_cap: Option<usize>,
        /// How many Hilbert-function values to report per graded module
        #[arg(long, default_value_t = 6, value_name = "D")]
        degree_bound: i64,
    },
}

fn seed_from_env() -> Result<u64, Error> {
    match std::env::var("SPECTILT_SEED") {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| {
            Error::input(format!("SPECTILT_SEED must be an unsigned integer, found \"{s}\""))
        }),
    }
}

fn run() -> Result<String, Error> {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { file, json, jobs, pd_cap, degree_bound } => {
            let src = std::fs::read_to_string(&file).map_err(|e| {
                Error::input(format!("cannot read session file {}: {e}", file.display()))
            })?;
            let opts = RunOptions {
                json,
                jobs: jobs.max(1),
                pd_cap,
                degree_bound,
                seed: seed_from_env()?,
                timing: true,
            };
            run_session(&src, &opts)
        }
    }
}

fn main() {
    match run() {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
