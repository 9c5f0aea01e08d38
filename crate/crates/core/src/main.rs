use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use padic_dynamo::dynamics::Budget;
use padic_dynamo::{run, Error, ExperimentConfig, RunOptions, Subcommand};

/// Run a p-adic dynamics experiment described by a config file.
#[derive(Parser)]
#[command(name = "padic-dynamo", version)]
struct Cli {
    #[arg(value_enum)]
    command: Subcommand,
    #[arg(long)]
    config: PathBuf,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// cap on enumerated points
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// accept maps failing the syntactic restrictedness check
    #[arg(long)]
    override_restricted: bool,
}

const OPERATION_ERROR: u8 = 1;
const CONFIG_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.config.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let config = match ExperimentConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.config.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let options = RunOptions { budget: Budget(cli.budget), override_restricted: cli.override_restricted };
    let report = match run(cli.command, &config, &options) {
        Ok(r) => r.to_string(),
        Err(Error::Config(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(OPERATION_ERROR);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, report),
        None => {
            print!("{report}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(OPERATION_ERROR);
    }
    ExitCode::SUCCESS
}
