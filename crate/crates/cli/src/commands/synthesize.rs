use anyhow::Result;
use qmtraj_core::basis::build_basis_with;
use qmtraj_core::synth::{assemble_gram, packet_series, project_with_gram, reconstruct, ProjectionSummary, ScalarProductSpec};
use qmtraj_core::targets::TargetTrajectory;
use qmtraj_core::verify::check_unitarity;
use qmtraj_core::Grid1D;
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::artifacts::{floats, Writer};
use crate::config::RunConfig;

pub const COEFFICIENTS: &str = "coefficients.json";

/// Real Hermitian-pair coefficients of a synthesized trajectory.
#[derive(Debug, Serialize, Deserialize)]
pub struct Coefficients {
    pub config: RunConfig,
    /// Number of modes, `N + 1`.
    pub modes: usize,
    pub values: Vec<f64>,
}

#[derive(Serialize)]
struct Results {
    trajectory: TargetTrajectory,
    scalar_product: ScalarProductSpec,
    projection: ProjectionSummary,
    mass_drift: f64,
    relative_mass_drift: f64,
}

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let c = cfg.constants();
    let tt = cfg.trajectory()?;
    let spec = cfg.scalar_product();
    let basis = w.timed("basis", || build_basis_with(cfg.modes, cfg.half_width, &c))?;
    let gram = w.timed("gram", || assemble_gram(&basis, &spec))?;
    let proj = w.timed("projection", || project_with_gram(&tt, &basis, &spec, &gram))?;

    let xs = Grid1D::symmetric(cfg.half_width, cfg.x_points)?;
    let times = cfg.times();
    let d = w.timed("reconstruction", || reconstruct(&proj.coefficients, &basis, &xs, &times))?;
    let stats = packet_series(&d)?;
    let rows = (0..times.len()).map(|i| floats(&[stats.times[i], stats.mean[i], stats.sigma[i]]));
    w.csv("timeseries.csv", &["t", "x_M", "sigma_x"], rows)?;

    let snaps = reconstruct(&proj.coefficients, &basis, &xs, &cfg.snapshot_times)?;
    let pts = xs.points();
    let rows = cfg.snapshot_times.iter().enumerate().flat_map(|(ti, &t)| {
        let s = &snaps;
        pts.iter()
            .enumerate()
            .map(move |(xi, &x)| floats(&[t, x, s.rho[(ti, xi)], s.momentum[(ti, xi)], s.energy[(ti, xi)]]))
    });
    w.csv("snapshots.csv", &["t", "x_S", "rho", "P", "E"], rows)?;

    w.json(
        COEFFICIENTS,
        &Coefficients {
            config: cfg.clone(),
            modes: proj.coefficients.modes(),
            values: proj.coefficients.to_real(),
        },
    )?;
    let unitarity = check_unitarity(&d, cfg.tol_unitarity)?;
    Outcome::ok(Results {
        trajectory: tt,
        scalar_product: spec,
        projection: proj.summary(),
        mass_drift: unitarity.drift,
        relative_mass_drift: unitarity.relative_drift,
    })
}
