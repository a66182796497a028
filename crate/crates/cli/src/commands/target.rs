use anyhow::Result;
use qmtraj_core::Grid1D;
use serde::Serialize;

use super::Outcome;
use crate::artifacts::{floats, Writer};
use crate::config::RunConfig;

#[derive(Serialize)]
struct Totals {
    t: f64,
    mass: f64,
    momentum: f64,
    energy: f64,
}

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let tt = cfg.trajectory()?;
    let xs = Grid1D::symmetric(cfg.half_width, cfg.x_points)?;
    let times = cfg.times();
    let d = w.timed("sample", || tt.sample(&xs, &times))?;
    let pts = xs.points();
    let rows = times.iter().enumerate().flat_map(|(ti, &t)| {
        let d = &d;
        pts.iter()
            .enumerate()
            .map(move |(xi, &x)| floats(&[t, x, d.rho[(ti, xi)], d.momentum[(ti, xi)], d.energy[(ti, xi)]]))
    });
    w.csv("target.csv", &["t", "x_S", "rho", "P", "E"], rows)?;
    let totals = times
        .iter()
        .map(|&t| {
            let (mass, momentum, energy) = tt.totals(t, cfg.half_width)?;
            Ok(Totals { t, mass, momentum, energy })
        })
        .collect::<Result<Vec<_>>>()?;
    Outcome::ok(serde_json::json!({ "trajectory": tt, "totals": totals }))
}
