use anyhow::{Context, Result};
use ndarray::Array2;
use num_complex::Complex64;
use qmtraj_core::multiparticle::{
    check_decoupled_continuity, separability_residual, two_particle_observables, ContinuityResidual,
    SeparabilityResidual, SingleParticleSlices, TwoParticleField, TwoParticleObservables,
};
use qmtraj_core::targets::Mollifier;
use qmtraj_core::Grid1D;
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::artifacts::{read_json, Writer};
use crate::config::{Demo, RunConfig};

/// Rank-one residual below which factor observables are reported.
const SEPARABLE: f64 = 1e-6;
const DEMO_HALF_WIDTH: f64 = 15.0;
const DEMO_POINTS: usize = 301;

type Table = Vec<Vec<[f64; 2]>>;

/// Input file: slices of the two-particle field at one or more times.
#[derive(Debug, Serialize, Deserialize)]
pub struct FieldFile {
    pub x1: Grid1D,
    pub x2: Grid1D,
    pub masses: [f64; 2],
    pub hbar: f64,
    pub frames: Vec<Frame>,
}

/// `φ|₀`, `∂φ/∂x₁D|₀`, `∂φ/∂x₂D|₀` as `[re, im]`, indexed `[x₁][x₂]`.
#[derive(Debug, Serialize, Deserialize)]
pub struct Frame {
    pub t: f64,
    pub diagonal: Table,
    pub d1: Table,
    pub d2: Table,
}

fn array(t: &Table, name: &str) -> Result<Array2<Complex64>> {
    let rows = t.len();
    let cols = t.first().map_or(0, Vec::len);
    let flat: Vec<Complex64> = t.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
    Array2::from_shape_vec((rows, cols), flat).with_context(|| format!("`{name}` is ragged"))
}

fn load(path: &std::path::Path) -> Result<(Vec<TwoParticleField>, Vec<f64>)> {
    let file: FieldFile = read_json(path)?;
    let masses = (file.masses[0], file.masses[1]);
    let mut fields = Vec::new();
    let mut times = Vec::new();
    for f in &file.frames {
        let field = TwoParticleField::new(
            file.x1,
            file.x2,
            array(&f.diagonal, "diagonal")?,
            array(&f.d1, "d1")?,
            array(&f.d2, "d2")?,
            masses,
            file.hbar,
        )?;
        fields.push(field);
        times.push(f.t);
    }
    Ok((fields, times))
}

/// Two mollified packets moving with opposite momenta; the entangled demo
/// adds the exchanged configuration.
fn demo(cfg: &RunConfig) -> Result<(Vec<TwoParticleField>, Vec<f64>)> {
    let xs = Grid1D::symmetric(DEMO_HALF_WIDTH, DEMO_POINTS)?;
    let f = Mollifier::new(2.0, cfg.mollifier)?;
    let [m1, m2] = cfg.masses;
    let v1 = cfg.speed;
    let v2 = -cfg.speed * m1 / m2;
    let packet = |v: f64, m: f64, x0: f64, t: f64| {
        let pts = xs.points();
        let q = Complex64::new(0.0, m * v / cfg.hbar);
        let phi0 = pts.iter().map(|&x| Complex64::from(f.value(x - x0 - v * t))).collect();
        let phi1 = pts.iter().map(|&x| q * f.value(x - x0 - v * t)).collect();
        SingleParticleSlices::new(xs, phi0, phi1)
    };
    let times: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    let fields = times
        .iter()
        .map(|&t| {
            let a = TwoParticleField::product(&packet(v1, m1, -5.0, t)?, &packet(v2, m2, 5.0, t)?, (m1, m2), cfg.hbar)?;
            Ok(match cfg.demo {
                Demo::Product => a,
                Demo::Entangled => {
                    let b = TwoParticleField::product(&packet(v1, m1, 5.0, t)?, &packet(v2, m2, -5.0, t)?, (m1, m2), cfg.hbar)?;
                    a.sum(&b)?
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((fields, times))
}

#[derive(Serialize)]
struct FrameReport {
    t: f64,
    separability: SeparabilityResidual,
    observables: Option<TwoParticleObservables>,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    source: String,
    frames: Vec<FrameReport>,
    continuity: Option<ContinuityResidual>,
}

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let (fields, times, source) = match &cfg.input {
        Some(p) => {
            let (f, t) = load(p)?;
            (f, t, p.display().to_string())
        }
        None => {
            let (f, t) = demo(cfg)?;
            (f, t, format!("demo ({DEMO_POINTS} points on [-{DEMO_HALF_WIDTH}, {DEMO_HALF_WIDTH}])"))
        }
    };
    let frames = fields
        .iter()
        .zip(&times)
        .map(|(f, &t)| {
            Ok(FrameReport {
                t,
                separability: separability_residual(f)?,
                observables: two_particle_observables(f, SEPARABLE).ok(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let continuity = if fields.len() >= 3 {
        Some(w.timed("continuity", || check_decoupled_continuity(&fields, &times))?)
    } else {
        None
    };
    let report = Report {
        config: cfg,
        source,
        frames,
        continuity,
    };
    w.json("two_particle.json", &report)?;
    let worst = report.frames.iter().map(|f| f.separability.r0).fold(0.0, f64::max);
    Outcome::ok(serde_json::json!({ "max_r0": worst, "continuity": report.continuity }))
}
