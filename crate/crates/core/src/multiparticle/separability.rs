use nalgebra::DMatrix;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::TwoParticleField;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::synth::packet_stats;

/// Relative distances of the three slices from the separable forms
/// `ρ₁ρ₂`, `g₁ρ₂`, `ρ₁g₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityResidual {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
}

/// Unit-mass factors of a near-separable field.
#[derive(Debug, Clone, PartialEq)]
pub struct Factors {
    pub rho1: Vec<Complex64>,
    pub rho2: Vec<Complex64>,
    /// Per-particle `φ⁽¹⁾` factors.
    pub g1: Vec<Complex64>,
    pub g2: Vec<Complex64>,
    /// Total mass `∬ρ`.
    pub mass: Complex64,
    pub residual: SeparabilityResidual,
}

fn to_matrix(a: &Array2<Complex64>) -> DMatrix<Complex64> {
    let (r, c) = a.dim();
    DMatrix::from_fn(r, c, |i, j| a[(i, j)])
}

fn trapezoid(xs: &Grid1D, v: &[Complex64]) -> Complex64 {
    let re: Vec<f64> = v.iter().map(|z| z.re).collect();
    let im: Vec<f64> = v.iter().map(|z| z.im).collect();
    Complex64::new(xs.trapezoid(&re), xs.trapezoid(&im))
}

fn frobenius(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Best `g` with `a ≈ g ⊗ v` (rows) or `a ≈ v ⊗ g` (columns), and the
/// relative residual.
fn fit_factor(a: &Array2<Complex64>, v: &[Complex64], along_rows: bool) -> (Vec<Complex64>, f64) {
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let (r, c) = a.dim();
    let g: Vec<Complex64> = if along_rows {
        (0..r).map(|i| (0..c).map(|j| a[(i, j)] * v[j].conj()).sum::<Complex64>() / vv).collect()
    } else {
        (0..c).map(|j| (0..r).map(|i| a[(i, j)] * v[i].conj()).sum::<Complex64>() / vv).collect()
    };
    let norm = frobenius(a);
    if norm == 0.0 {
        return (g, 0.0);
    }
    let mut err = 0.0;
    for i in 0..r {
        for j in 0..c {
            let model = if along_rows { g[i] * v[j] } else { v[i] * g[j] };
            err += (a[(i, j)] - model).norm_sqr();
        }
    }
    (g, err.sqrt() / norm)
}

/// Rank-one factorization of the diagonal slice by its dominant singular
/// pair, and fits of the derivative slices against it.
pub fn factorize(f: &TwoParticleField) -> Result<Factors> {
    let total = frobenius(&f.diagonal);
    if !(total > 0.0) {
        return Err(Error::ZeroDensity);
    }
    let svd = to_matrix(&f.diagonal).svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let (k, s1) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .fold((0, -1.0), |best, (i, s)| if s > best.1 { (i, s) } else { best });
    let tail: f64 = svd.singular_values.iter().map(|s| s * s).sum::<f64>() - s1 * s1;
    let r0 = (tail.max(0.0)).sqrt() / total;

    let a: Vec<Complex64> = u.column(k).iter().copied().collect();
    let b: Vec<Complex64> = vt.row(k).iter().copied().collect();
    let (n1, n2) = (trapezoid(&f.x1, &a), trapezoid(&f.x2, &b));
    if n1.norm() == 0.0 || n2.norm() == 0.0 {
        return Err(Error::ZeroDensity);
    }
    let rho1: Vec<Complex64> = a.iter().map(|z| z / n1).collect();
    let rho2: Vec<Complex64> = b.iter().map(|z| z / n2).collect();
    let mass = n1 * n2 * s1;

    let (g1, r1) = fit_factor(&f.d1, &rho2, true);
    let (g2, r2) = fit_factor(&f.d2, &rho1, false);
    Ok(Factors {
        rho1,
        rho2,
        g1: g1.into_iter().map(|z| z / mass).collect(),
        g2: g2.into_iter().map(|z| z / mass).collect(),
        mass,
        residual: SeparabilityResidual { r0, r1, r2 },
    })
}

/// `(r₀, r₁, r₂)`; see [`factorize`].
pub fn separability_residual(f: &TwoParticleField) -> Result<SeparabilityResidual> {
    Ok(factorize(f)?.residual)
}

/// Per-particle and total centre of mass and momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoParticleObservables {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
    /// `Q₁ + Q₂`.
    pub q: f64,
    /// `P₁ + P₂`.
    pub p: f64,
    /// `∫ρ₁`, `∫ρ₂` of the factors.
    pub norms: (f64, f64),
    /// `ρ⁴`-weighted widths of the factors.
    pub sigmas: (f64, f64),
}

/// Observables of the unit-mass factors; errors when `r₀ > threshold`.
pub fn two_particle_observables(f: &TwoParticleField, threshold: f64) -> Result<TwoParticleObservables> {
    let fac = factorize(f)?;
    if fac.residual.r0 > threshold {
        return Err(Error::NotSeparable {
            residual: fac.residual.r0,
            threshold,
        });
    }
    let moment = |xs: &Grid1D, rho: &[Complex64]| {
        let w: Vec<f64> = xs.points().iter().zip(rho).map(|(x, r)| x * r.re).collect();
        xs.trapezoid(&w)
    };
    let momentum = |xs: &Grid1D, g: &[Complex64]| {
        let p: Vec<f64> = g.iter().map(|z| (Complex64::new(0.0, -f.hbar) * z).re).collect();
        xs.trapezoid(&p)
    };
    let sigma = |xs: &Grid1D, rho: &[Complex64]| {
        let r: Vec<f64> = rho.iter().map(|z| z.re).collect();
        packet_stats(xs, &r).map(|m| m.sigma)
    };
    let norm = |xs: &Grid1D, rho: &[Complex64]| trapezoid(xs, rho).re;
    let (q1, q2) = (moment(&f.x1, &fac.rho1), moment(&f.x2, &fac.rho2));
    let (p1, p2) = (momentum(&f.x1, &fac.g1), momentum(&f.x2, &fac.g2));
    Ok(TwoParticleObservables {
        q1,
        q2,
        p1,
        p2,
        q: q1 + q2,
        p: p1 + p2,
        norms: (norm(&f.x1, &fac.rho1), norm(&f.x2, &fac.rho2)),
        sigmas: (sigma(&f.x1, &fac.rho1)?, sigma(&f.x2, &fac.rho2)?),
    })
}
