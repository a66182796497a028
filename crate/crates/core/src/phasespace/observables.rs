use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{QuantumMatrixField, WignerField};
use super::potential::PotentialSpec;
use crate::error::{Error, Result};
use crate::numerics::{QuadratureRule, integrate};
use crate::units::Constants;

/// Centre of mass, total momentum and total energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub q: f64,
    pub p: f64,
    pub e: f64,
}

/// `x_D`-derivatives of a quantum matrix at `x_D = 0`, one value per `x_S`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralSlices {
    pub phi0: Vec<Complex64>,
    pub phi1: Vec<Complex64>,
    pub phi2: Vec<Complex64>,
}

/// Centered 5-point stencils in `x_D` at `x_D = 0`.
pub fn central_slices(field: &QuantumMatrixField) -> Result<CentralSlices> {
    let j = field.zero_index()?;
    if j < 2 || j + 2 >= field.xd.len() {
        return Err(Error::Resolution {
            what: "x_D derivatives at 0 (need two points on each side)".into(),
        });
    }
    let d = field.xd.spacing();
    let mut out = CentralSlices {
        phi0: Vec::with_capacity(field.xs.len()),
        phi1: Vec::with_capacity(field.xs.len()),
        phi2: Vec::with_capacity(field.xs.len()),
    };
    for row in field.values.rows() {
        let (m2, m1, c, p1, p2) = (row[j - 2], row[j - 1], row[j], row[j + 1], row[j + 2]);
        out.phi0.push(c);
        out.phi1.push((m2 - m1 * 8.0 + p1 * 8.0 - p2) / (12.0 * d));
        out.phi2.push((-m2 + m1 * 16.0 - c * 30.0 + p1 * 16.0 - p2) / (12.0 * d * d));
    }
    Ok(out)
}

/// `Q = ∫ x φ|₀`, `P = ∫ −iħ ∂_D φ|₀`, `E = ∫ [−ħ²/2m ∂²_D + V] φ|₀`.
///
/// The delta barrier contributes `V₀ φ(0, 0)`.
pub fn observables(field: &QuantumMatrixField, v: &PotentialSpec) -> Result<Observables> {
    v.validate()?;
    let s = central_slices(field)?;
    let Constants { mass, hbar, .. } = field.constants;
    let xs = field.xs.points();
    let rho: Vec<f64> = s.phi0.iter().map(|c| c.re).collect();
    let weighted: Vec<f64> = rho.iter().zip(&xs).map(|(r, x)| r * x).collect();
    let momentum: Vec<f64> = s.phi1.iter().map(|d| (Complex64::new(0.0, -hbar) * d).re).collect();
    let kinetic: Vec<f64> = s.phi2.iter().map(|d| -hbar * hbar / (2.0 * mass) * d.re).collect();
    let mut e = field.xs.trapezoid(&kinetic);
    match v {
        PotentialSpec::DeltaBarrier { strength } => {
            if !field.xs.contains(0.0) {
                return Err(Error::Domain {
                    x: 0.0,
                    lower: field.xs.lower(),
                    upper: field.xs.upper(),
                });
            }
            e += strength * interpolate(&xs, &rho, 0.0);
        }
        _ => {
            let pot: Vec<f64> = rho
                .iter()
                .zip(&xs)
                .map(|(r, &x)| Ok(r * v.value(x)?))
                .collect::<Result<_>>()?;
            e += field.xs.trapezoid(&pot);
        }
    }
    Ok(Observables {
        q: field.xs.trapezoid(&weighted),
        p: field.xs.trapezoid(&momentum),
        e,
    })
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let h = xs[1] - xs[0];
    let s = ((x - xs[0]) / h).clamp(0.0, (xs.len() - 1) as f64);
    let i = (s.floor() as usize).min(xs.len() - 2);
    let t = s - i as f64;
    ys[i] * (1.0 - t) + ys[i + 1] * t
}

/// The perfectly localized field `δ(x_S − x₀) e^{i k₀ x_D}`; observables are
/// exact and the field is never sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizedState {
    pub x0: f64,
    pub k0: f64,
}

impl LocalizedState {
    pub fn momentum(&self, c: &Constants) -> f64 {
        c.hbar * self.k0
    }

    /// Point support `(x₀, ħk₀)` of its Wigner function.
    pub fn phase_space_point(&self, c: &Constants) -> (f64, f64) {
        (self.x0, self.momentum(c))
    }

    pub fn observables(&self, c: &Constants, v: &PotentialSpec) -> Result<Observables> {
        let p = self.momentum(c);
        let pot = match v {
            PotentialSpec::DeltaBarrier { strength } => {
                if self.x0 == 0.0 {
                    return Err(Error::Unsupported {
                        kind: "delta-barrier",
                        hint: "a point mass sitting on the barrier has no finite energy",
                    });
                }
                let _ = strength;
                0.0
            }
            _ => v.value(self.x0)?,
        };
        Ok(Observables {
            q: self.x0,
            p,
            e: p * p / (2.0 * c.mass) + pot,
        })
    }
}

/// `g(x, p) = g₁(x) + g₂(p)`.
pub struct AdditiveObservable<A, B> {
    pub position: A,
    pub momentum: B,
}

impl<A: Fn(f64) -> f64, B: Fn(f64) -> f64> AdditiveObservable<A, B> {
    pub fn eval(&self, x: f64, p: f64) -> f64 {
        (self.position)(x) + (self.momentum)(p)
    }
}

/// `∬ g F dx dp` on the grid of `F`.
pub fn phase_space_expectation<A, B>(f: &WignerField, g: &AdditiveObservable<A, B>) -> f64
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let gx: Vec<f64> = f.xs.points().into_iter().map(&g.position).collect();
    let gp: Vec<f64> = f.ps.points().into_iter().map(&g.momentum).collect();
    let rx = f.position_marginal();
    let rp = f.momentum_marginal();
    let dx = f.xs.spacing();
    let dp = f.ps.spacing();
    let a: f64 = gx.iter().zip(&rx).map(|(g, r)| g * r).sum::<f64>() * dx;
    let b: f64 = gp.iter().zip(&rp).map(|(g, r)| g * r).sum::<f64>() * dp;
    a + b
}

/// `∬ h(x, p) F dx dp` for an arbitrary phase-space function.
pub fn phase_space_moment<H: Fn(f64, f64) -> f64>(f: &WignerField, h: H) -> f64 {
    let xs = f.xs.points();
    let ps = f.ps.points();
    let mut acc = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            acc += h(x, p) * f.values[(i, j)];
        }
    }
    acc * f.xs.spacing() * f.ps.spacing()
}

/// Mean and standard deviation of `p²/2m + V(x)` weighted by `F`.
pub fn energy_spread(f: &WignerField, v: &PotentialSpec) -> Result<(f64, f64)> {
    let m = f.constants.mass;
    v.value(0.0)?;
    let energy = |x: f64, p: f64| p * p / (2.0 * m) + v.value(x).unwrap_or(f64::NAN);
    let norm = f.integral();
    if norm == 0.0 {
        return Err(Error::ZeroDensity);
    }
    let mean = phase_space_moment(f, energy) / norm;
    let second = phase_space_moment(f, |x, p| (energy(x, p) - mean).powi(2)) / norm;
    Ok((mean, second.max(0.0).sqrt()))
}

/// `∬ h(x, p) dx dp` over a rectangle by tensor Gauss–Legendre quadrature.
pub fn integrate_phase_space<H>(h: H, x: (f64, f64), p: (f64, f64), rule: &QuadratureRule) -> Result<f64>
where
    H: Fn(f64, f64) -> f64,
{
    integrate(|xv| integrate(|pv| h(xv, pv), p, rule).unwrap_or(f64::NAN), x, rule)
}
