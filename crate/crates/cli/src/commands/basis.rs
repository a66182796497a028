use anyhow::Result;
use qmtraj_core::basis::build_basis_with;
use qmtraj_core::Parity;
use serde::Serialize;

use crate::artifacts::{fmt, Writer};
use super::Outcome;
use crate::config::RunConfig;

#[derive(Serialize)]
struct Summary {
    modes: usize,
    max_wavenumber: f64,
    max_eigen_residual: f64,
}

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let c = cfg.constants();
    let basis = w.timed("basis", || build_basis_with(cfg.modes, cfg.half_width, &c))?;
    let rows = basis.modes().iter().map(|m| {
        let parity = match m.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        vec![m.index.to_string(), parity.to_string(), fmt(m.wavenumber), fmt(m.phase), fmt(m.frequency)]
    });
    w.csv("basis.csv", &["n", "parity", "k_n", "phi_n", "omega_n"], rows)?;
    let summary = Summary {
        modes: basis.len(),
        max_wavenumber: basis.max_wavenumber(),
        max_eigen_residual: basis.modes().iter().map(|m| m.eigen_residual(&c)).fold(0.0, f64::max),
    };
    Outcome::ok(summary)
}
