//! Fixed-precision p-adic arithmetic over unramified extensions, polynomial
//! maps that lift p-th power maps, and experiments on their periodic points,
//! iterated preimages and valuations.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod padic;
pub mod poly;
pub mod report;
pub mod stability;
pub mod valuations;

pub use config::{ConfigError, ExperimentConfig};
pub use error::{Error, Result};
pub use experiment::{run, RunOptions, Subcommand};
pub use report::Report;
