mod angle;
mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, RunConfig};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.command {
        Command::Grid(a) | Command::Synthesize { scenario: a, .. } => RunConfig::from_scenario_args(a)?,
        Command::Verify(a) => RunConfig::from_common(a)?,
        Command::Classify { .. } => RunConfig::default(),
    };
    if let Some(n) = cfg.workers()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
    }
    match &cli.command {
        Command::Grid(_) => commands::grid(&cfg),
        Command::Classify { gate } => commands::classify(gate),
        Command::Synthesize { gate, .. } => commands::synthesize(gate, &cfg),
        Command::Verify(_) => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spinlogic: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
