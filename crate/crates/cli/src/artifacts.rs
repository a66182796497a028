//! Deterministic CSV and JSON writers plus the run manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const MANIFEST: &str = "manifest.json";
pub const TIMINGS: &str = "timings.json";

/// Full double precision, 17 significant digits.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn floats(row: &[f64]) -> Vec<String> {
    row.iter().copied().map(fmt).collect()
}

pub struct Writer {
    dir: PathBuf,
    written: Vec<String>,
    timings: BTreeMap<String, f64>,
}

impl Writer {
    pub fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
            timings: BTreeMap::new(),
        })
    }

    pub fn csv<I>(&mut self, name: &str, header: &[&str], rows: I) -> Result<()>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let path = self.dir.join(name);
        let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        write_json(&self.dir.join(name), value)?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Runs `f`, recording its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(stage.to_string(), start.elapsed().as_secs_f64());
        out
    }

    /// Writes the manifest and, separately, the wall-clock timings so that
    /// reruns leave every other file byte-identical.
    pub fn finish<R: Serialize>(mut self, config: &RunConfig, results: R) -> Result<()> {
        write_json(&self.dir.join(TIMINGS), &self.timings)?;
        let mut artifacts = std::mem::take(&mut self.written);
        artifacts.push(TIMINGS.to_string());
        let manifest = Manifest {
            tool: "qmtraj".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
            artifacts,
            results: serde_json::to_value(results)?,
        };
        write_json(&self.dir.join(MANIFEST), &manifest)
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub artifacts: Vec<String>,
    pub results: serde_json::Value,
}
