use nalgebra::{DMatrix, DVector};
use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gram::{assemble_gram, element_forms};
use super::pairs::{CoefficientMatrix, SpaceTimeDensities, SpectralField};
use super::spec::{ScalarProductSpec, DEFAULT_RIDGE};
use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::numerics::{segment_nodes, solve_regularized_symmetric, Grid1D};
use crate::targets::DensityTriple;

const NODES_PER_PANEL: usize = 8;

/// Coefficients plus solve diagnostics.
#[derive(Debug, Clone)]
pub struct ProjectionResult {
    pub coefficients: CoefficientMatrix,
    /// `‖Gc − b‖ / ‖b‖`.
    pub solve_residual: f64,
    /// `‖Σ c_a e_a − target‖ / ‖target‖` in the scalar-product norm.
    pub projection_residual: f64,
    pub target_norm: f64,
    /// Absolute ridge added to the diagonal.
    pub ridge: f64,
}

/// Summary fields for run manifests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectionSummary {
    pub solve_residual: f64,
    pub projection_residual: f64,
    pub target_norm: f64,
    pub ridge: f64,
    pub unknowns: usize,
}

impl ProjectionResult {
    pub fn summary(&self) -> ProjectionSummary {
        let n = self.coefficients.modes();
        ProjectionSummary {
            solve_residual: self.solve_residual,
            projection_residual: self.projection_residual,
            target_norm: self.target_norm,
            ridge: self.ridge,
            unknowns: n * n,
        }
    }
}

/// Quadrature nodes of the space-time rectangle, broken at the mask edges.
struct SpaceTimeNodes {
    xs: Vec<f64>,
    wx: Vec<f64>,
    ts: Vec<f64>,
    wt: Vec<f64>,
    /// Node indices inside the mask, in x and t.
    x_in: Vec<usize>,
    t_in: Vec<usize>,
}

fn nodes_for<T: SpaceTimeDensities + ?Sized>(target: &T, basis: &BasisSet, spec: &ScalarProductSpec) -> SpaceTimeNodes {
    let l = basis.half_width();
    let t = spec.half_time;
    let mask = spec.mask_or_empty();
    let k_max = basis.max_wavenumber();
    let modes = basis.modes();
    let omega_max = modes.last().map_or(0.0, |m| m.frequency) - modes[0].frequency;
    let (hx, ht) = target.resolution().unwrap_or((f64::INFINITY, f64::INFINITY));
    let px = hx.min(std::f64::consts::PI / (3.0 * k_max.max(1e-12))).min(l / 4.0);
    let pt = ht.min(std::f64::consts::PI / (3.0 * omega_max.max(1e-12))).min(t / 4.0);
    let breaks = |half: f64, inner: f64| {
        let mut b = vec![-half, -inner, 0.0, inner, half];
        b.dedup();
        b
    };
    let (xs, wx) = segment_nodes(&breaks(l, mask.space), px, NODES_PER_PANEL);
    let (ts, wt) = segment_nodes(&breaks(t, mask.time), pt, NODES_PER_PANEL);
    let x_in = (0..xs.len()).filter(|&i| xs[i].abs() < mask.space).collect();
    let t_in = (0..ts.len()).filter(|&i| ts[i].abs() < mask.time).collect();
    SpaceTimeNodes { xs, wx, ts, wt, x_in, t_in }
}

/// Right-hand side `b_a = Re⟨e_a, target⟩` and `‖target‖²`.
pub fn right_hand_side<T: SpaceTimeDensities + ?Sized>(target: &T, basis: &BasisSet, spec: &ScalarProductSpec) -> Result<(DVector<f64>, f64)> {
    spec.validate(basis.half_width())?;
    if let Some(r) = target.reach(spec.half_time) {
        let l = basis.half_width();
        if r > l * (1.0 + 1e-12) {
            return Err(Error::Domain { x: r, lower: -l, upper: l });
        }
    }
    let nd = nodes_for(target, basis, spec);
    let (nx, nt) = (nd.xs.len(), nd.ts.len());

    // Target samples, one matrix per channel, rows per time.
    let rows: Vec<Vec<[num_complex::Complex64; 3]>> = nd
        .ts
        .par_iter()
        .map(|&t| nd.xs.iter().map(|&x| target.densities_at(x, t)).collect())
        .collect();
    let mut tgt = [Array2::<f64>::zeros((nt, nx)), Array2::zeros((nt, nx)), Array2::zeros((nt, nx))];
    let weights = [spec.w0, spec.w1, spec.w2];
    let mut norm2 = 0.0;
    let mut x_mask = vec![false; nx];
    for &i in &nd.x_in {
        x_mask[i] = true;
    }
    let mut t_mask = vec![false; nt];
    for &i in &nd.t_in {
        t_mask[i] = true;
    }
    for (ti, row) in rows.iter().enumerate() {
        for (xi, v) in row.iter().enumerate() {
            for c in 0..3 {
                if !(v[c].re.is_finite() && v[c].im.is_finite()) {
                    return Err(Error::NonFiniteIntegrand { at: nd.xs[xi] });
                }
                tgt[c][(ti, xi)] = v[c].re;
                if !(t_mask[ti] && x_mask[xi]) {
                    norm2 += nd.wt[ti] * nd.wx[xi] * weights[c] * v[c].norm_sqr();
                }
            }
        }
    }

    // Space shapes per pair, weighted: f_i f_j and W_ij.
    let (pairs, forms) = element_forms(basis);
    let modes = basis.modes();
    let np = pairs.len();
    let mut s_ff = Array2::<f64>::zeros((nx, np));
    let mut s_w = Array2::<f64>::zeros((nx, np));
    for (xi, &x) in nd.xs.iter().enumerate() {
        let f: Vec<f64> = modes.iter().map(|m| m.value_unchecked(x)).collect();
        let d: Vec<f64> = modes.iter().map(|m| m.derivative_unchecked(x)).collect();
        for (p, &(i, j)) in pairs.iter().enumerate() {
            s_ff[(xi, p)] = nd.wx[xi] * f[i] * f[j];
            s_w[(xi, p)] = nd.wx[xi] * (d[i] * f[j] - f[i] * d[j]);
        }
    }
    let shapes = [&s_ff, &s_w, &s_ff];
    let mut u: [Array2<f64>; 3] = std::array::from_fn(|c| tgt[c].dot(shapes[c]));
    if !nd.x_in.is_empty() && !nd.t_in.is_empty() {
        for c in 0..3 {
            let sub_t = tgt[c].select(ndarray::Axis(0), &nd.t_in).select(ndarray::Axis(1), &nd.x_in);
            let sub_s = shapes[c].select(ndarray::Axis(0), &nd.x_in);
            let rect = sub_t.dot(&sub_s);
            for (r, &ti) in nd.t_in.iter().enumerate() {
                let mut row = u[c].row_mut(ti);
                row -= &rect.row(r);
            }
        }
    }

    let b: Vec<f64> = forms
        .par_iter()
        .map(|fm| {
            let mut s = 0.0;
            for (ti, &t) in nd.ts.iter().enumerate() {
                let td = fm.density_time.eval(t);
                let tm = fm.momentum_time.eval(t);
                let v = spec.w0 * fm.rho * td * u[0][(ti, fm.pair)]
                    + spec.w1 * fm.momentum * tm * u[1][(ti, fm.pair)]
                    + spec.w2 * fm.energy * td * u[2][(ti, fm.pair)];
                s += nd.wt[ti] * v;
            }
            s
        })
        .collect();
    Ok((DVector::from_vec(b), norm2))
}

/// Least-squares projection of `target` onto the span of the basis pairs.
pub fn project_target<T: SpaceTimeDensities + ?Sized>(target: &T, basis: &BasisSet, spec: &ScalarProductSpec) -> Result<ProjectionResult> {
    let g = assemble_gram(basis, spec)?;
    project_with_gram(target, basis, spec, &g)
}

/// As [`project_target`] with a precomputed Gram matrix.
pub fn project_with_gram<T: SpaceTimeDensities + ?Sized>(target: &T, basis: &BasisSet, spec: &ScalarProductSpec, gram: &DMatrix<f64>) -> Result<ProjectionResult> {
    let n = basis.len();
    if gram.nrows() != n * n || gram.ncols() != n * n {
        return Err(Error::Dimension {
            expected: n * n,
            got: gram.nrows(),
        });
    }
    let (b, norm2) = right_hand_side(target, basis, spec)?;
    let b_norm = b.norm();
    if b_norm == 0.0 {
        return Ok(ProjectionResult {
            coefficients: CoefficientMatrix::zeros(n),
            solve_residual: 0.0,
            projection_residual: if norm2 > 0.0 { 1.0 } else { 0.0 },
            target_norm: norm2.sqrt(),
            ridge: 0.0,
        });
    }
    let ridge = spec.ridge.unwrap_or(DEFAULT_RIDGE) * mean_diagonal(gram);
    let c = solve_regularized_symmetric(gram, &b, ridge)?;
    let gc = gram * &c;
    let solve_residual = (&gc - &b).norm() / b_norm;
    let quad = c.dot(&gc) - 2.0 * b.dot(&c) + norm2;
    let projection_residual = if norm2 > 0.0 { (quad.max(0.0) / norm2).sqrt() } else { 0.0 };
    Ok(ProjectionResult {
        coefficients: CoefficientMatrix::from_real(n, c.as_slice())?,
        solve_residual,
        projection_residual,
        target_norm: norm2.sqrt(),
        ridge,
    })
}

fn mean_diagonal(g: &DMatrix<f64>) -> f64 {
    if g.nrows() == 0 {
        0.0
    } else {
        g.trace() / g.nrows() as f64
    }
}

/// Densities of `Σ C_ij φ_ij` on a grid.
pub fn reconstruct(c: &CoefficientMatrix, basis: &BasisSet, xs: &Grid1D, times: &[f64]) -> Result<DensityTriple> {
    let field = SpectralField::new(basis.clone(), c.clone())?;
    Ok(field.reconstruct(xs, times)?.0)
}
