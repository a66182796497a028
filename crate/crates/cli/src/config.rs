//! Run configuration: a flat TOML file overlaid with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use qmtraj_core::synth::{Mask, ScalarProductSpec, DESK_RIDGE};
use qmtraj_core::targets::{Mollifier, MollifierKind, TargetKind, TargetTrajectory};
use qmtraj_core::verify::Tolerances;
use qmtraj_core::Constants;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WignerState {
    FreeGaussian,
    HoGround,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Demo {
    Product,
    Entangled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Unitarity,
    Boundary,
    Hierarchy,
}

/// Every parameter of every pipeline. Optional fields are resolved by
/// [`RunConfig::resolve`] before anything runs, so artifacts only ever see
/// concrete values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: String,

    pub mass: f64,
    pub hbar: f64,
    pub barrier: f64,

    /// `L`.
    pub half_width: f64,
    /// Highest mode index `N`.
    pub modes: usize,
    /// Mollifier width `Δx`.
    pub dx: f64,
    pub mollifier: MollifierKind,
    pub speed: f64,
    pub target: TargetKind,
    pub omega0: f64,
    pub dx0: f64,
    pub k: f64,
    pub masses: [f64; 2],

    pub w0: Option<f64>,
    pub w1: Option<f64>,
    pub w2: Option<f64>,
    /// `T`; defaults to `(L − support)/v`.
    pub half_time: Option<f64>,
    pub mask: bool,
    /// Relative ridge.
    pub ridge: f64,

    pub x_points: usize,
    pub time_limit: f64,
    pub time_step: f64,
    pub snapshot_times: Vec<f64>,
    pub wigner_state: WignerState,
    pub wigner_points: usize,
    pub wigner_half_width: f64,
    pub time: f64,

    pub checks: Vec<Check>,
    pub tol_unitarity: f64,
    pub tol_boundary: f64,
    pub tol_hierarchy: f64,
    pub localization_factor: f64,
    pub hierarchy_window: f64,
    pub hierarchy_step: f64,

    pub demo: Demo,
    pub input: Option<PathBuf>,
    pub output: PathBuf,
    /// Reserved; no pipeline draws random numbers.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tol = Tolerances::default();
        Self {
            subcommand: String::new(),
            mass: 1.0,
            hbar: 1.0,
            barrier: 1.0,
            half_width: 40.0,
            modes: 40,
            dx: 3.0,
            mollifier: MollifierKind::Cos4,
            speed: 1.0,
            target: TargetKind::Reflected,
            omega0: 1.0,
            dx0: 1.0,
            k: 1.0,
            masses: [1.0, 2.0],
            w0: None,
            w1: None,
            w2: None,
            half_time: None,
            mask: true,
            ridge: DESK_RIDGE,
            x_points: 1601,
            time_limit: 30.0,
            time_step: 1.0,
            snapshot_times: vec![-20.0, 0.0, 20.0],
            wigner_state: WignerState::FreeGaussian,
            wigner_points: 256,
            wigner_half_width: 10.0,
            time: 0.0,
            checks: vec![Check::Unitarity, Check::Hierarchy],
            tol_unitarity: tol.unitarity,
            tol_boundary: tol.boundary,
            tol_hierarchy: tol.hierarchy,
            localization_factor: tol.localization_factor,
            hierarchy_window: 0.1,
            hierarchy_step: 0.005,
            demo: Demo::Product,
            input: None,
            output: PathBuf::from("out"),
            seed: 0,
        }
    }
}

/// A rejected field, reported by name.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: &'static str,
    pub reason: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config field `{}`: {}", self.field, self.reason)
    }
}

impl std::error::Error for ConfigError {}

fn bad(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError {
        field,
        reason: reason.into(),
    }
}

fn positive(field: &'static str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(bad(field, format!("must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    /// Reads a TOML file (or starts from defaults) and applies `overrides`.
    pub fn load(path: Option<&Path>, overrides: &Overrides, subcommand: &str) -> Result<Self> {
        let mut table = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                text.parse::<toml::Table>().with_context(|| format!("parsing config {}", p.display()))?
            }
            None => toml::Table::new(),
        };
        let extra = toml::Table::try_from(overrides).context("encoding command-line overrides")?;
        table.extend(extra);
        table.insert("subcommand".into(), toml::Value::String(subcommand.into()));
        let cfg: RunConfig = table.try_into().context("reading configuration")?;
        Ok(cfg)
    }

    pub fn constants(&self) -> Constants {
        Constants {
            mass: self.mass,
            hbar: self.hbar,
            barrier: self.barrier,
        }
    }

    pub fn mollifier(&self) -> Result<Mollifier, ConfigError> {
        Mollifier::new(self.dx, self.mollifier).map_err(|e| bad("dx", e.to_string()))
    }

    pub fn trajectory(&self) -> Result<TargetTrajectory, ConfigError> {
        let f = self.mollifier()?;
        let c = self.constants();
        let tt = match self.target {
            TargetKind::Reflected => TargetTrajectory::reflected(self.speed, f, c),
            TargetKind::Transmitted => TargetTrajectory::transmitted(self.speed, f, None, c),
            TargetKind::NaiveTransmitted => TargetTrajectory::naive_transmitted(self.speed, f, c),
            TargetKind::Free => TargetTrajectory::free(self.speed, f, c),
        };
        tt.map_err(|e| bad("target", e.to_string()))
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            unitarity: self.tol_unitarity,
            boundary: self.tol_boundary,
            hierarchy: self.tol_hierarchy,
            localization_factor: self.localization_factor,
        }
    }

    /// Fills the optional fields and validates the result.
    pub fn resolve(mut self) -> Result<Self, ConfigError> {
        for (field, v) in [("mass", self.mass), ("hbar", self.hbar), ("barrier", self.barrier)] {
            positive(field, v)?;
        }
        positive("half_width", self.half_width)?;
        positive("dx", self.dx)?;
        positive("speed", self.speed)?;
        positive("omega0", self.omega0)?;
        positive("dx0", self.dx0)?;
        positive("k", self.k)?;
        positive("masses", self.masses[0])?;
        positive("masses", self.masses[1])?;
        if self.masses[0] == self.masses[1] {
            return Err(bad("masses", "the two particles must have distinct masses"));
        }
        if self.modes == 0 {
            return Err(bad("modes", "need at least one mode above the ground state"));
        }
        let support = self.mollifier()?.support();
        let t_max = (self.half_width - support) / self.speed;
        if t_max <= 0.0 {
            return Err(bad("dx", format!("mollifier support {support} does not fit inside L = {}", self.half_width)));
        }
        let t = *self.half_time.get_or_insert(t_max);
        positive("half_time", t)?;
        if t > t_max * (1.0 + 1e-12) {
            return Err(bad("half_time", format!("target leaves [−L, L]: need T ≤ (L − {support})/v = {t_max}, got {t}")));
        }
        let normalized = ScalarProductSpec::normalized_weights(self.mass, self.speed, t);
        let w0 = *self.w0.get_or_insert(normalized.w0);
        let w1 = *self.w1.get_or_insert(normalized.w1);
        let w2 = *self.w2.get_or_insert(normalized.w2);
        for (field, w) in [("w0", w0), ("w1", w1), ("w2", w2)] {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(bad(field, format!("must be nonnegative and finite, got {w}")));
            }
        }
        if w0 + w1 + w2 <= 0.0 {
            return Err(bad("w0", "at least one channel weight must be positive"));
        }
        if !(self.ridge >= 0.0 && self.ridge.is_finite()) {
            return Err(bad("ridge", format!("must be nonnegative, got {}", self.ridge)));
        }
        if self.x_points < 3 || self.x_points % 2 == 0 {
            return Err(bad("x_points", format!("must be odd and at least 3 so that x = 0 is a node, got {}", self.x_points)));
        }
        positive("time_limit", self.time_limit)?;
        positive("time_step", self.time_step)?;
        if (self.time_limit / self.time_step).round() > 1e6 {
            return Err(bad("time_step", "more than a million time samples"));
        }
        if let Some(s) = self.snapshot_times.iter().find(|s| !s.is_finite()) {
            return Err(bad("snapshot_times", format!("must be finite, got {s}")));
        }
        if self.wigner_points < 8 {
            return Err(bad("wigner_points", format!("need at least 8, got {}", self.wigner_points)));
        }
        positive("wigner_half_width", self.wigner_half_width)?;
        if !self.time.is_finite() {
            return Err(bad("time", "must be finite"));
        }
        for (field, v) in [
            ("tol_unitarity", self.tol_unitarity),
            ("tol_boundary", self.tol_boundary),
            ("tol_hierarchy", self.tol_hierarchy),
            ("localization_factor", self.localization_factor),
            ("hierarchy_window", self.hierarchy_window),
            ("hierarchy_step", self.hierarchy_step),
        ] {
            positive(field, v)?;
        }
        if self.hierarchy_step * 4.0 > self.hierarchy_window * 2.0 {
            return Err(bad("hierarchy_step", "window must hold at least five time samples"));
        }
        Ok(self)
    }

    /// The scalar product of a resolved config.
    pub fn scalar_product(&self) -> ScalarProductSpec {
        ScalarProductSpec {
            w0: self.w0.expect("resolved"),
            w1: self.w1.expect("resolved"),
            w2: self.w2.expect("resolved"),
            half_time: self.half_time.expect("resolved"),
            mask: self.mask.then(|| Mask::for_width(self.dx)),
            ridge: Some(self.ridge),
        }
    }

    /// `−time_limit, …, time_limit` in steps of `time_step`.
    pub fn times(&self) -> Vec<f64> {
        let n = (self.time_limit / self.time_step).floor() as i64;
        (-n..=n).map(|i| i as f64 * self.time_step).collect()
    }
}

/// Command-line overrides; each flag mirrors the config field of the same name.
#[derive(Debug, Clone, Default, Args, Serialize)]
pub struct Overrides {
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    /// Barrier strength `V₀`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub barrier: Option<f64>,
    /// Domain half-width `L`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    /// Highest mode index `N`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    /// Mollifier width `Δx`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dx: Option<f64>,
    #[arg(long, global = true, value_parser = ["cos4", "gaussian"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mollifier: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    #[arg(long, global = true, value_parser = ["reflected", "transmitted", "naive-transmitted", "free"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dx0: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Two comma-separated masses.
    #[arg(long, global = true, value_delimiter = ',', num_args = 2)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub masses: Option<Vec<f64>>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w0: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w1: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w2: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_time: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask: Option<bool>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ridge: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_points: Option<usize>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_limit: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_step: Option<f64>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_times: Option<Vec<f64>>,
    #[arg(long, global = true, value_parser = ["free-gaussian", "ho-ground"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wigner_state: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wigner_points: Option<usize>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wigner_half_width: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    #[arg(long, global = true, value_delimiter = ',', value_parser = ["unitarity", "boundary", "hierarchy"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_unitarity: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_boundary: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_hierarchy: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub localization_factor: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hierarchy_window: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hierarchy_step: Option<f64>,
    #[arg(long, global = true, value_parser = ["product", "entangled"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub demo: Option<String>,
    /// Input file: a run manifest for `verify`, a field file for `two-particle`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    /// Output directory.
    #[arg(long, short, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}
