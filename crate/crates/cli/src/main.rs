mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;
use spectravoid::gapstats::Verdict;

use commands::Outcome;
use config::{Cli, Command};
use error::{CliError, CliResult};

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("SPECTRAVOID_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Invalid(format!("SPECTRAVOID_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Invalid(format!("cannot start {threads} worker threads: {e}")))
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    configure_threads()?;
    match &cli.command {
        Command::Track(a) => commands::cmd_track(a),
        Command::Gaps(a) => commands::cmd_gaps(a),
        Command::Codim(a) => commands::cmd_codim(a),
        Command::Table(a) => commands::cmd_table(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done | Outcome::Verdict(Verdict::Pass)) => ExitCode::SUCCESS,
        Ok(Outcome::Verdict(v)) => {
            eprintln!("verdict: {v:?}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
