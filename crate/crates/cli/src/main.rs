use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Run quantum and classical walk experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment(s) described by a TOML config.
    Run {
        config: PathBuf,
        /// Set a config value, e.g. `--override steps=50` or `--override coin.preset=psi_minus`.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Suppress progress messages.
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, overrides, quiet } => ExitCode::from(qwalk_cli::run(&config, &overrides, quiet)),
    }
}
