//! Physics checks on a synthesized run (`--input manifest.json`) or, without
//! an input, on the configured analytic target.

use std::path::Path;

use anyhow::{bail, Context, Result};
use qmtraj_core::basis::build_basis_with;
use qmtraj_core::phasespace::PotentialSpec;
use qmtraj_core::synth::{packet_series, CoefficientMatrix, SpectralField};
use qmtraj_core::targets::Hierarchy;
use qmtraj_core::verify::{
    check_boundary_decay, check_hierarchy, check_localization, check_mass_series, check_unitarity, HierarchyOptions,
};
use qmtraj_core::{Grid1D, PhysicsReport};
use serde::Serialize;

use super::synthesize::{Coefficients, COEFFICIENTS};
use super::Outcome;
use crate::artifacts::{read_json, Manifest, Writer};
use crate::config::{Check, RunConfig};

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    /// Configuration of the verified run; physical parameters come from here.
    source: &'a RunConfig,
    report: &'a PhysicsReport,
    passed: bool,
}

/// Uniform times `−window, …, window`.
fn window(half: f64, step: f64) -> Vec<f64> {
    let n = (half / step).round() as i64;
    (-n..=n).map(|i| i as f64 * step).collect()
}

fn hierarchy_checks(cfg: &RunConfig, src: &RunConfig, fine: &Hierarchy, coarse: &Hierarchy, report: &mut PhysicsReport) -> Result<()> {
    if cfg.checks.contains(&Check::Hierarchy) {
        let opts = HierarchyOptions {
            band: None,
            tolerance: cfg.tol_hierarchy,
        };
        let v = PotentialSpec::DeltaBarrier { strength: src.barrier };
        report.hierarchy = Some(check_hierarchy(fine, &v, &src.constants(), &opts)?);
    }
    if cfg.checks.contains(&Check::Boundary) {
        report.boundary = Some(check_boundary_decay(coarse, cfg.tol_boundary));
    }
    Ok(())
}

fn load_source(path: &Path) -> Result<(RunConfig, CoefficientMatrix)> {
    let manifest: Manifest = read_json(path)?;
    if manifest.config.subcommand != "synthesize" {
        bail!("{} is a `{}` manifest; verify needs a `synthesize` run", path.display(), manifest.config.subcommand);
    }
    let dir = path.parent().unwrap_or(Path::new("."));
    let coeffs: Coefficients = read_json(&dir.join(COEFFICIENTS))?;
    let matrix = CoefficientMatrix::from_real(coeffs.modes, &coeffs.values).context("coefficient file")?;
    Ok((manifest.config, matrix))
}

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let mut report = PhysicsReport::new(cfg.tolerances());
    let fine_times = window(cfg.hierarchy_window, cfg.hierarchy_step);
    let source = match &cfg.input {
        Some(path) => {
            let (src, coefficients) = load_source(path)?;
            let basis = build_basis_with(src.modes, src.half_width, &src.constants())?;
            let field = SpectralField::new(basis, coefficients)?;
            let xs = Grid1D::symmetric(src.half_width, cfg.x_points)?;
            let (d, _) = w.timed("reconstruction", || field.reconstruct(&xs, &cfg.times()))?;
            if cfg.checks.contains(&Check::Unitarity) {
                report.unitarity = Some(check_unitarity(&d, cfg.tol_unitarity)?);
            }
            let fine = w.timed("hierarchy", || field.hierarchy(&xs, &fine_times))?;
            hierarchy_checks(cfg, &src, &fine, &fine, &mut report)?;
            report.localization = Some(check_localization(
                &packet_series(&d)?,
                &src.mollifier()?,
                src.half_time.expect("resolved"),
                cfg.localization_factor,
            )?);
            src
        }
        None => {
            let tt = cfg.trajectory()?;
            let xs = Grid1D::symmetric(cfg.half_width, cfg.x_points)?;
            if cfg.checks.contains(&Check::Unitarity) {
                let masses = cfg
                    .times()
                    .iter()
                    .map(|&t| Ok(tt.totals(t, cfg.half_width)?.0))
                    .collect::<Result<Vec<_>>>()?;
                report.unitarity = Some(check_mass_series(&masses, cfg.tol_unitarity)?);
            }
            // Boundary tails are sampled across the whole barrier crossing.
            let crossing = tt.interaction_window().max(cfg.hierarchy_window);
            let coarse_times: Vec<f64> = (0..=20).map(|i| -crossing + 0.1 * crossing * i as f64).collect();
            let fine = w.timed("hierarchy", || tt.hierarchy(&xs, &fine_times))?;
            let coarse = tt.hierarchy(&xs, &coarse_times)?;
            hierarchy_checks(cfg, cfg, &fine, &coarse, &mut report)?;
            cfg.clone()
        }
    };
    let passed = report.passed();
    w.json(
        "report.json",
        &Report {
            config: cfg,
            source: &source,
            report: &report,
            passed,
        },
    )?;
    Ok(Outcome {
        passed,
        results: serde_json::json!({ "passed": passed, "report": report }),
    })
}
