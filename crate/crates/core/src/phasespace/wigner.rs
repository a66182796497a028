use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::field::{QuantumMatrixField, WignerField};
use crate::error::{Error, Result};
use crate::numerics::Grid1D;

const HERMITICITY_TOL: f64 = 1e-10;

/// Momentum grid conjugate to an `x_D` grid of `n` points with spacing `d`.
pub fn conjugate_momentum_grid(xd: &Grid1D, hbar: f64) -> Result<Grid1D> {
    let n = xd.len();
    let dp = 2.0 * std::f64::consts::PI * hbar / (n as f64 * xd.spacing());
    let p0 = -((n / 2) as f64) * dp;
    Grid1D::new(p0, p0 + (n - 1) as f64 * dp, n)
}

/// `F(x_S, p_S) = (2πħ)⁻¹ ∫ φ(x_S, x_D) e^{−i p_S x_D / ħ} dx_D`.
///
/// The output momentum grid is the FFT grid conjugate to `x_D`. The input
/// must be Hermitian on a symmetric `x_D` grid.
pub fn moyal_wigner(field: &QuantumMatrixField) -> Result<WignerField> {
    let deviation = field.hermiticity_deviation()?;
    let scale = field.values.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    if deviation > HERMITICITY_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Symmetry { deviation });
    }
    let hbar = field.constants.hbar;
    let ps = conjugate_momentum_grid(&field.xd, hbar)?;
    let transformed = forward(&field.values, &field.xd, &ps, hbar);
    let values = transformed.mapv(|v| v.re);
    Ok(WignerField {
        xs: field.xs,
        ps,
        values,
        constants: field.constants,
    })
}

/// Inverse of [`moyal_wigner`]: `φ(x_S, x_D) = ∫ F e^{i p_S x_D / ħ} dp_S`.
pub fn inverse_moyal_wigner(wigner: &WignerField) -> Result<QuantumMatrixField> {
    let hbar = wigner.constants.hbar;
    let xd = conjugate_position_grid(&wigner.ps, hbar)?;
    let complex = wigner.values.mapv(|v| Complex64::new(v, 0.0));
    let values = inverse(&complex, &wigner.ps, &xd, hbar);
    QuantumMatrixField::new(wigner.xs, xd, values, wigner.constants)
}

/// Symmetric `x_D` grid conjugate to a momentum grid.
pub(crate) fn conjugate_position_grid(ps: &Grid1D, hbar: f64) -> Result<Grid1D> {
    let n = ps.len();
    let d = 2.0 * std::f64::consts::PI * hbar / (n as f64 * ps.spacing());
    Grid1D::symmetric(0.5 * (n - 1) as f64 * d, n)
}

/// Row-wise `x_D → p_S` transform with the `(2πħ)⁻¹` prefactor. The grids
/// must satisfy `dp·d = 2πħ/n`.
pub(crate) fn forward(values: &Array2<Complex64>, xd: &Grid1D, ps: &Grid1D, hbar: f64) -> Array2<Complex64> {
    let n = xd.len();
    let (d, x0) = (xd.spacing(), xd.lower());
    let (dp, p0) = (ps.spacing(), ps.lower());
    let fft = FftPlanner::new().plan_fft_forward(n);
    let pre: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(1.0, -p0 * j as f64 * d / hbar)).collect();
    let post: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(d / (2.0 * std::f64::consts::PI * hbar), -(p0 + k as f64 * dp) * x0 / hbar))
        .collect();
    transform_rows(values, |row| {
        for (v, w) in row.iter_mut().zip(&pre) {
            *v *= w;
        }
        fft.process(row);
        for (v, w) in row.iter_mut().zip(&post) {
            *v *= w;
        }
    })
}

/// Row-wise `p_S → x_D` transform, exact inverse of [`forward`].
pub(crate) fn inverse(values: &Array2<Complex64>, ps: &Grid1D, xd: &Grid1D, hbar: f64) -> Array2<Complex64> {
    let n = ps.len();
    let (d, x0) = (xd.spacing(), xd.lower());
    let (dp, p0) = (ps.spacing(), ps.lower());
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let pre: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(1.0, k as f64 * dp * x0 / hbar)).collect();
    let post: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(dp, p0 * (x0 + j as f64 * d) / hbar))
        .collect();
    transform_rows(values, |row| {
        for (v, w) in row.iter_mut().zip(&pre) {
            *v *= w;
        }
        fft.process(row);
        for (v, w) in row.iter_mut().zip(&post) {
            *v *= w;
        }
    })
}

fn transform_rows<F>(values: &Array2<Complex64>, op: F) -> Array2<Complex64>
where
    F: Fn(&mut [Complex64]) + Sync,
{
    let (rows, cols) = values.dim();
    let mut out = values.as_standard_layout().into_owned();
    out.as_slice_mut()
        .expect("standard layout")
        .par_chunks_mut(cols)
        .for_each(&op);
    debug_assert_eq!(out.dim(), (rows, cols));
    out
}
