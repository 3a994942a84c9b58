//! Config-driven runner for quantum and classical walk experiments.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{load, ExperimentConfig, Mode, OutputFormat};
pub use error::CliError;
pub use run::run;
