//! Run every experiment kind against a config file and print the reports.
//!
//! cargo run --example run_config -- crates/core/configs/manin_mumford_diagonal.conf

use padic_dynamo::{run, ExperimentConfig, RunOptions, Subcommand};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/backward_orbit_f5.conf").to_string());
    let config: ExperimentConfig = std::fs::read_to_string(&path)?.parse()?;
    for cmd in Subcommand::ALL {
        match run(cmd, &config, &RunOptions::default()) {
            Ok(report) => println!("{report}"),
            Err(e) => println!("# {cmd}: {e}\n"),
        }
    }
    Ok(())
}
