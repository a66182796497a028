use anyhow::Result;
use qmtraj_core::targets::{Mixture, Side, StationaryState};
use qmtraj_core::Grid1D;

use super::Outcome;
use crate::artifacts::{floats, Writer};
use crate::config::RunConfig;

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let c = cfg.constants();
    let mix = Mixture::scattering(cfg.k, cfg.mollifier()?, c)?;
    let pure = StationaryState::new(cfg.k, c)?;
    let xs = Grid1D::symmetric(cfg.half_width, cfg.x_points)?;
    let d = w.timed("mixture", || mix.sample(&xs, &[0.0]))?;
    let rows = xs
        .points()
        .into_iter()
        .enumerate()
        .map(|(i, x)| floats(&[x, d.rho[(0, i)], d.momentum[(0, i)], d.energy[(0, i)], pure.rho(x)]));
    w.csv("mixture.csv", &["x_S", "rho", "P", "E", "rho_pure"], rows)?;
    Outcome::ok(serde_json::json!({
        "weights": mix.weights,
        "left": pure.side(Side::Left),
        "right": pure.side(Side::Right),
    }))
}
