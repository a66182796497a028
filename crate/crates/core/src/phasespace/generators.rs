//! Generators of phase-space evolution acting on a Wigner field.
//!
//! Potential terms are applied in the `(x_S, x_D)` representation: the field
//! is transformed to `x_D`, multiplied pointwise, and transformed back. The
//! kinetic term `(p/m)(−iħ ∂F/∂x_S)` uses a spectral derivative in `x_S`.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::field::{WignerField, WignerRate};
use super::potential::PotentialSpec;
use super::wigner::{conjugate_position_grid, forward, inverse};
use crate::error::{Error, Result};

/// `H_Q F = [(1/m) P_S P_D + V(Q_S + Q_D/2) − V(Q_S − Q_D/2)] F`.
pub fn apply_quantum_generator(f: &WignerField, v: &PotentialSpec) -> Result<WignerRate> {
    reject_delta(v)?;
    v.validate()?;
    let mut rate = kinetic_term(f);
    let pot = potential_term(f, |x, xd| Ok(v.value(x + 0.5 * xd)? - v.value(x - 0.5 * xd)?))?;
    rate += &pot;
    Ok(WignerRate {
        xs: f.xs,
        ps: f.ps,
        values: rate,
    })
}

/// `H_C F = [(1/m) P_S P_D + V′(Q_S) Q_D] F`.
pub fn apply_classical_generator(f: &WignerField, v: &PotentialSpec) -> Result<WignerRate> {
    reject_delta(v)?;
    v.validate()?;
    v.derivative(1, 0.0)?;
    let mut rate = kinetic_term(f);
    let pot = potential_term(f, |x, xd| Ok(v.derivative(1, x)? * xd))?;
    rate += &pot;
    Ok(WignerRate {
        xs: f.xs,
        ps: f.ps,
        values: rate,
    })
}

/// The `n`-th term of `H_Q − H_C`:
/// `V⁽²ⁿ⁺¹⁾(Q_S) Q_D²ⁿ⁺¹ / ((2n+1)! 2²ⁿ)`, for `n ≥ 1`.
pub fn moyal_correction(f: &WignerField, v: &PotentialSpec, order: usize) -> Result<WignerRate> {
    if order == 0 {
        return Err(Error::invalid("order", "the correction series starts at n = 1"));
    }
    reject_delta(v)?;
    v.validate()?;
    let k = 2 * order + 1;
    v.derivative(k, 0.0)?;
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    let coef = 1.0 / (factorial * 4f64.powi(order as i32));
    let values = potential_term(f, |x, xd| Ok(coef * v.derivative(k, x)? * xd.powi(k as i32)))?;
    Ok(WignerRate {
        xs: f.xs,
        ps: f.ps,
        values,
    })
}

fn reject_delta(v: &PotentialSpec) -> Result<()> {
    if let PotentialSpec::DeltaBarrier { .. } = v {
        return Err(Error::Unsupported {
            kind: "delta-barrier",
            hint: "barrier dynamics are handled by the synth module",
        });
    }
    Ok(())
}

fn kinetic_term(f: &WignerField) -> Array2<Complex64> {
    let (m, hbar) = (f.constants.mass, f.constants.hbar);
    let dx = spectral_x_derivative(&f.values, f.xs.spacing());
    let ps = f.ps.points();
    let mut out = dx;
    for (mut col, p) in out.columns_mut().into_iter().zip(ps) {
        let factor = Complex64::new(0.0, -hbar * p / m);
        col.mapv_inplace(|v| v * factor);
    }
    out
}

fn potential_term<M>(f: &WignerField, multiplier: M) -> Result<Array2<Complex64>>
where
    M: Fn(f64, f64) -> Result<f64> + Sync,
{
    let hbar = f.constants.hbar;
    let xd = conjugate_position_grid(&f.ps, hbar)?;
    let complex = f.values.mapv(|v| Complex64::new(v, 0.0));
    let mut phi = inverse(&complex, &f.ps, &xd, hbar);
    let xs = f.xs.points();
    let xdp = xd.points();
    let cols = xd.len();
    phi.as_slice_mut()
        .expect("standard layout")
        .par_chunks_mut(cols)
        .zip(xs.par_iter())
        .try_for_each(|(row, &x)| -> Result<()> {
            for (v, &y) in row.iter_mut().zip(&xdp) {
                *v *= multiplier(x, y)?;
            }
            Ok(())
        })?;
    Ok(forward(&phi, &xd, &f.ps, hbar))
}

/// Spectral derivative along the first axis (periodic extension).
fn spectral_x_derivative(values: &Array2<f64>, h: f64) -> Array2<Complex64> {
    let (n, cols) = values.dim();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let period = n as f64 * h;
    let wavenumbers: Vec<f64> = (0..n)
        .map(|k| {
            if n % 2 == 0 && k == n / 2 {
                0.0
            } else {
                let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
                2.0 * std::f64::consts::PI * kk / period
            }
        })
        .collect();
    let transposed = values.t().as_standard_layout().mapv(|v| Complex64::new(v, 0.0));
    let mut buf = transposed;
    buf.as_slice_mut()
        .expect("standard layout")
        .par_chunks_mut(n)
        .for_each(|col| {
            fwd.process(col);
            for (v, &k) in col.iter_mut().zip(&wavenumbers) {
                *v *= Complex64::new(0.0, k / n as f64);
            }
            inv.process(col);
        });
    let out = buf.t().as_standard_layout().into_owned();
    debug_assert_eq!(out.dim(), (n, cols));
    out
}
