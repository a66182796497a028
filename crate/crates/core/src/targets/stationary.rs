use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mollifier::Mollifier;
use super::trajectory::{DensityTriple, TargetTrajectory};
use crate::basis::scattering_amplitudes;
use crate::error::{Error, Result};
use crate::numerics::{segment_nodes, Grid1D};
use crate::units::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

/// Constant parts of the three densities on one side of the barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideDensities {
    pub rho: f64,
    pub momentum: f64,
    pub energy: f64,
}

/// Scattering state `e^{ikx} + A_R e^{−ikx}` (left), `A_T e^{ikx}` (right).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryState {
    pub k: f64,
    pub reflection: Complex64,
    pub transmission: Complex64,
    pub constants: Constants,
}

impl StationaryState {
    pub fn new(k: f64, constants: Constants) -> Result<Self> {
        let (reflection, transmission) = scattering_amplitudes(k, &constants)?;
        Ok(Self {
            k,
            reflection,
            transmission,
            constants,
        })
    }

    pub fn side(&self, side: Side) -> SideDensities {
        let Constants { mass, hbar, .. } = self.constants;
        let p = hbar * self.k;
        let e = p * p / (2.0 * mass);
        let r2 = self.reflection.norm_sqr();
        let t2 = self.transmission.norm_sqr();
        match side {
            Side::Right => SideDensities {
                rho: t2,
                momentum: t2 * p,
                energy: t2 * e,
            },
            Side::Left => SideDensities {
                rho: 1.0 + r2,
                momentum: (1.0 - r2) * p,
                energy: (1.0 + r2) * e,
            },
        }
    }

    /// `2 Re{A₀ A_R* e^{2ikx}}`, present on the left only.
    pub fn interference(&self, x: f64) -> f64 {
        2.0 * (self.reflection.conj() * Complex64::from_polar(1.0, 2.0 * self.k * x)).re
    }

    /// Full mass density including the interference term.
    pub fn rho(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.side(Side::Left).rho + self.interference(x)
        } else {
            self.side(Side::Right).rho
        }
    }
}

pub fn stationary_pure_densities(k: f64, side: Side, constants: Constants) -> Result<(SideDensities, StationaryState)> {
    let s = StationaryState::new(k, constants)?;
    Ok((s.side(side), s))
}

/// Nonnegative branch weights of the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureWeights {
    pub reflected: f64,
    pub transmitted: f64,
}

impl MixtureWeights {
    /// `(|A_R|², |A_T|²)` at wavenumber `k`.
    pub fn scattering(k: f64, constants: &Constants) -> Result<Self> {
        let (r, t) = scattering_amplitudes(k, constants)?;
        Ok(Self {
            reflected: r.norm_sqr(),
            transmitted: t.norm_sqr(),
        })
    }
}

const NODES_PER_PANEL: usize = 16;

/// Time-translation ensemble of reflected and transmitted targets,
/// `v ∫ (w_R d_R(x, t − t₀) + w_T d_T(x, t − t₀)) dt₀`.
///
/// The result does not depend on `t`; each requested time gets the same row.
#[derive(Debug, Clone, Copy)]
pub struct Mixture {
    pub weights: MixtureWeights,
    reflected: TargetTrajectory,
    transmitted: TargetTrajectory,
}

impl Mixture {
    pub fn new(weights: MixtureWeights, speed: f64, mollifier: Mollifier, constants: Constants) -> Result<Self> {
        if !(weights.reflected >= 0.0 && weights.transmitted >= 0.0) {
            return Err(Error::invalid("weights", "mixture weights must be nonnegative"));
        }
        Ok(Self {
            weights,
            reflected: TargetTrajectory::reflected(speed, mollifier, constants)?,
            transmitted: TargetTrajectory::transmitted(speed, mollifier, None, constants)?,
        })
    }

    /// Scattering-weighted ensemble at `v = ħk/m`.
    pub fn scattering(k: f64, mollifier: Mollifier, constants: Constants) -> Result<Self> {
        let weights = MixtureWeights::scattering(k, &constants)?;
        Self::new(weights, constants.hbar * k / constants.mass, mollifier, constants)
    }

    /// `(ρ, ℘, ε)` at `x`.
    pub fn densities(&self, x: f64) -> Result<(f64, f64, f64)> {
        let v = self.reflected.speed;
        let w = self.reflected.mollifier.support();
        let (g1, g2) = self.transmitted.counterterms.expect("counterterms");
        let reach = w.max(g1.support()).max(g2.support());
        let lim = (x.abs() + 2.0 * reach) / v;
        let mut breaks = vec![-lim, 0.0, lim, -w / v, w / v];
        for c in [x - w, x + w, -x - w, -x + w] {
            breaks.push(c / v);
        }
        breaks.retain(|b| b.abs() <= lim);
        breaks.sort_by(|a, b| a.total_cmp(b));
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * lim.max(1.0));
        let (nodes, weights) = segment_nodes(&breaks, w / (8.0 * v), NODES_PER_PANEL);
        let mut acc = (0.0, 0.0, 0.0);
        for (s, q) in nodes.into_iter().zip(weights) {
            let (r1, p1, e1) = self.reflected.densities(x, s);
            let (r2, p2, e2) = self.transmitted.densities(x, s);
            let (a, b) = (self.weights.reflected, self.weights.transmitted);
            acc.0 += q * (a * r1 + b * r2);
            acc.1 += q * (a * p1 + b * p2);
            acc.2 += q * (a * e1 + b * e2);
        }
        let out = (v * acc.0, v * acc.1, v * acc.2);
        if !(out.0.is_finite() && out.1.is_finite() && out.2.is_finite()) {
            return Err(Error::NonFiniteIntegrand { at: x });
        }
        Ok(out)
    }

    pub fn sample(&self, xs: &Grid1D, times: &[f64]) -> Result<DensityTriple> {
        let row: Vec<(f64, f64, f64)> = xs
            .points()
            .par_iter()
            .map(|&x| self.densities(x))
            .collect::<Result<_>>()?;
        let mut out = DensityTriple::zeros(*xs, times.to_vec());
        for ti in 0..times.len() {
            for (xi, &(r, p, e)) in row.iter().enumerate() {
                out.rho[(ti, xi)] = r;
                out.momentum[(ti, xi)] = p;
                out.energy[(ti, xi)] = e;
            }
        }
        Ok(out)
    }
}

/// Scattering-weighted ensemble sampled on a grid.
pub fn mixture_density(k: f64, mollifier: Mollifier, constants: Constants, xs: &Grid1D, times: &[f64]) -> Result<DensityTriple> {
    Mixture::scattering(k, mollifier, constants)?.sample(xs, times)
}
