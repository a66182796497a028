//! `qmtraj`: command-line driver for the quantum-matrix trajectory toolkit.
//!
//! Exit status: 0 on success, 1 when a requested verification check fails,
//! 2 on invalid configuration or I/O errors.

mod artifacts;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigError, Overrides, RunConfig};

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "QMTRAJ_THREADS";

#[derive(Parser)]
#[command(name = "qmtraj", version, about = "Quantum-matrix trajectories for a delta barrier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file; flags override its values.
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the delta-barrier eigenbasis.
    Basis,
    /// Moyal–Wigner transform of a reference state, with observables.
    Wigner,
    /// Sample a target trajectory on the space-time grid.
    Target,
    /// Project a target onto the eigenbasis and reconstruct it.
    Synthesize,
    /// Physics checks on a synthesized run or an analytic target.
    Verify,
    /// Stationary ensemble of reflected and transmitted targets.
    Mixture,
    /// Separability and continuity checks for a two-particle field.
    TwoParticle,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Wigner => "wigner",
            Command::Target => "target",
            Command::Synthesize => "synthesize",
            Command::Verify => "verify",
            Command::Mixture => "mixture",
            Command::TwoParticle => "two-particle",
        }
    }
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().map_err(|_| anyhow::anyhow!("{THREADS_VAR} must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> anyhow::Result<bool> {
        init_threads()?;
        let cfg = RunConfig::load(cli.config.as_deref(), &cli.overrides, cli.command.name())?.resolve()?;
        commands::run(&cfg)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed; see the report in the output directory");
            ExitCode::from(1)
        }
        Err(e) => {
            match e.downcast_ref::<ConfigError>() {
                Some(c) => eprintln!("error: {c}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
