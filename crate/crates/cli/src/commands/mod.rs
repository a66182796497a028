mod basis;
mod mixture;
mod synthesize;
mod target;
mod two_particle;
mod verify;
mod wigner;

use anyhow::{bail, Result};

use crate::artifacts::Writer;
use crate::config::RunConfig;

/// What a pipeline reports back for the manifest.
pub struct Outcome {
    /// `false` when a requested verification threshold failed.
    pub passed: bool,
    pub results: serde_json::Value,
}

impl Outcome {
    fn ok<T: serde::Serialize>(results: T) -> Result<Self> {
        Ok(Self {
            passed: true,
            results: serde_json::to_value(results)?,
        })
    }
}

/// Runs the configured pipeline and writes its manifest.
pub fn run(cfg: &RunConfig) -> Result<bool> {
    let mut w = Writer::new(&cfg.output)?;
    let out = match cfg.subcommand.as_str() {
        "basis" => basis::run(cfg, &mut w),
        "wigner" => wigner::run(cfg, &mut w),
        "target" => target::run(cfg, &mut w),
        "synthesize" => synthesize::run(cfg, &mut w),
        "verify" => verify::run(cfg, &mut w),
        "mixture" => mixture::run(cfg, &mut w),
        "two-particle" => two_particle::run(cfg, &mut w),
        other => bail!("unknown subcommand `{other}`"),
    }?;
    w.finish(cfg, &out.results)?;
    Ok(out.passed)
}
