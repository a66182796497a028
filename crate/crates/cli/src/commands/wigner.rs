use anyhow::Result;
use qmtraj_core::phasespace::{energy_spread, moyal_wigner, phase_space_moment, pure_to_matrix, PotentialSpec, ReferenceKind};
use qmtraj_core::Grid1D;
use serde::Serialize;

use super::Outcome;
use crate::artifacts::{floats, Writer};
use crate::config::{RunConfig, WignerState};

#[derive(Serialize)]
struct Observables<'a> {
    config: &'a RunConfig,
    state: &'static str,
    norm: f64,
    q: f64,
    p: f64,
    e: f64,
    de: f64,
}

pub fn run(cfg: &RunConfig, w: &mut Writer) -> Result<Outcome> {
    let c = cfg.constants();
    let (kind, potential) = match cfg.wigner_state {
        WignerState::FreeGaussian => (ReferenceKind::FreeGaussian { dx0: cfg.dx0 }, PotentialSpec::Zero),
        WignerState::HoGround => (
            ReferenceKind::HoGround { omega0: cfg.omega0 },
            PotentialSpec::harmonic(cfg.mass, cfg.omega0),
        ),
    };
    let psi = kind.wave_function(&c, cfg.time)?;
    let xs = Grid1D::symmetric(cfg.wigner_half_width, cfg.wigner_points)?;
    let xd = Grid1D::symmetric(2.0 * cfg.wigner_half_width, cfg.wigner_points)?;
    let f = w.timed("transform", || -> Result<_> {
        let m = pure_to_matrix(psi, xs, xd, c)?;
        Ok(moyal_wigner(&m)?)
    })?;
    let xp = f.xs.points();
    let pp = f.ps.points();
    let rows = xp
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| pp.iter().enumerate().map(move |(j, &p)| (i, j, x, p)))
        .map(|(i, j, x, p)| floats(&[x, p, f.values[(i, j)]]));
    w.csv("wigner.csv", &["x_S", "p_S", "F"], rows)?;
    let norm = f.integral();
    let (e, de) = energy_spread(&f, &potential)?;
    let obs = Observables {
        config: cfg,
        state: kind.name(),
        norm,
        q: phase_space_moment(&f, |x, _| x) / norm,
        p: phase_space_moment(&f, |_, p| p) / norm,
        e,
        de,
    };
    w.json("observables.json", &obs)?;
    Outcome::ok(serde_json::json!({ "norm": obs.norm, "q": obs.q, "p": obs.p, "e": obs.e, "de": obs.de }))
}
