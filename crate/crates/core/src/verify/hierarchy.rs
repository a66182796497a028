use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use super::report::HierarchyReport;
use crate::error::{Error, Result};
use crate::numerics::stencil_derivative;
use crate::phasespace::PotentialSpec;
use crate::targets::Hierarchy;
use crate::units::Constants;

/// Options for [`check_hierarchy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyOptions {
    /// Half-width of the band around a delta barrier that is checked through
    /// jump conditions instead of pointwise; defaults to four grid cells.
    pub band: Option<f64>,
    pub tolerance: f64,
}

impl Default for HierarchyOptions {
    fn default() -> Self {
        Self { band: None, tolerance: 1e-3 }
    }
}

/// `∂ₜ` of every column, fourth order in the interior.
fn time_derivative(a: &Array2<Complex64>, dt: f64) -> Array2<Complex64> {
    let (nt, nx) = a.dim();
    let cols: Vec<Vec<Complex64>> = (0..nx)
        .into_par_iter()
        .map(|xi| {
            let col: Vec<Complex64> = a.column(xi).to_vec();
            (0..nt).map(|ti| stencil_derivative(&col, ti, dt)).collect()
        })
        .collect();
    Array2::from_shape_fn((nt, nx), |(ti, xi)| cols[xi][ti])
}

fn uniform_step(times: &[f64]) -> Result<f64> {
    let dt = times[1] - times[0];
    if !(dt > 0.0) {
        return Err(Error::Shape("times must be increasing".into()));
    }
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(1.0) {
            return Err(Error::Shape("times must be uniformly spaced".into()));
        }
    }
    Ok(dt)
}

/// Fourth-order one-sided derivative at `i0` towards `dir = ±1`.
fn one_sided(row: &[Complex64], i0: usize, dir: isize, h: f64) -> Complex64 {
    let at = |k: isize| row[(i0 as isize + dir * k) as usize];
    let c = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let s: Complex64 = (0..5).map(|k| c[k] * at(k as isize)).sum();
    s * (dir as f64 / (12.0 * h))
}

/// Cubic extrapolation to `i0` from the four points on side `dir = ±1`.
fn one_sided_value(row: &[Complex64], i0: usize, dir: isize) -> Complex64 {
    let at = |k: isize| row[(i0 as isize + dir * k) as usize];
    4.0 * at(1) - 6.0 * at(2) + 4.0 * at(3) - at(4)
}

/// Composite Simpson over `row[a..=b]` (even number of cells) with the given
/// endpoint values.
fn simpson(row: &[Complex64], a: usize, b: usize, ends: (Complex64, Complex64), h: f64) -> Complex64 {
    let mut s = ends.0 + ends.1;
    for (i, v) in row[a + 1..b].iter().enumerate() {
        s += v * if i % 2 == 0 { 4.0 } else { 2.0 };
    }
    s * (h / 3.0)
}

fn relative(num: f64, den: f64, alt: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if alt > 0.0 {
        num / alt
    } else {
        num
    }
}

/// Finite-difference residuals of
/// `∂ₓφ⁽ⁿ⁾ = −i(m/ħ)∂ₜφ⁽ⁿ⁻¹⁾ + c_n(m/ħ²)V′φ⁽ⁿ⁻²⁾`, `c = 0, 1, 2`.
///
/// Each residual is the discrete L² norm of the mismatch over the interior
/// points divided by that of the right-hand side. For a delta barrier the
/// band `|x| < b` is replaced by the jump conditions obtained by integrating
/// each relation across it; the grid must then contain `x = 0`. The sampled
/// `φ⁽²⁾` is taken without its `δ(x_S)` component, whose weight
/// `(m/ħ²)V₀φ⁽⁰⁾(0, t)` the second relation fixes.
pub fn check_hierarchy(h: &Hierarchy, potential: &PotentialSpec, constants: &Constants, opts: &HierarchyOptions) -> Result<HierarchyReport> {
    let (nt, nx) = h.phi[0].dim();
    if nt != h.times.len() || nx != h.xs.len() || h.phi.iter().any(|p| p.dim() != (nt, nx)) {
        return Err(Error::Shape("hierarchy components must share the (times, x) grid".into()));
    }
    if nt < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: nt });
    }
    if nx < 9 {
        return Err(Error::Resolution {
            what: "hierarchy needs at least 9 spatial points".into(),
        });
    }
    let dt = uniform_step(&h.times)?;
    let dx = h.xs.spacing();
    let xs = h.xs.points();
    let Constants { mass, hbar, .. } = *constants;
    let mi = Complex64::new(0.0, -mass / hbar);

    let delta = match potential {
        PotentialSpec::DeltaBarrier { strength } => Some(*strength),
        _ => None,
    };
    let vprime: Vec<f64> = match delta {
        Some(_) => vec![0.0; nx],
        None => xs.iter().map(|&x| potential.derivative(1, x)).collect::<Result<_>>()?,
    };
    let kappa = mass / (hbar * hbar);

    // Interior masks.
    let t_skip = if nt >= 5 { 2 } else { 1 };
    let t_range = t_skip..nt - t_skip;
    let band = delta.map(|_| opts.band.unwrap_or(4.0 * dx).max(2.0 * dx));
    let x_ok: Vec<bool> = (0..nx)
        .map(|i| i >= 2 && i + 2 < nx && band.is_none_or(|b| xs[i].abs() >= b))
        .collect();

    let dts: Vec<Array2<Complex64>> = (0..3).map(|n| time_derivative(&h.phi[n], dt)).collect();

    let mut relations = [0.0; 3];
    for n in 1..=3 {
        let mut num = 0.0;
        let mut den = 0.0;
        let mut lhs_norm = 0.0;
        for ti in t_range.clone() {
            let row: Vec<Complex64> = h.phi[n].row(ti).to_vec();
            for xi in 0..nx {
                if !x_ok[xi] {
                    continue;
                }
                let lhs = stencil_derivative(&row, xi, dx);
                let mut rhs = mi * dts[n - 1][(ti, xi)];
                if n >= 2 && delta.is_none() {
                    rhs += (n - 1) as f64 * kappa * vprime[xi] * h.phi[n - 2][(ti, xi)];
                }
                num += (lhs - rhs).norm_sqr();
                den += rhs.norm_sqr();
                lhs_norm += lhs.norm_sqr();
            }
        }
        relations[n - 1] = relative(num.sqrt(), den.sqrt(), lhs_norm.sqrt());
    }

    let mut jumps = [0.0; 3];
    if let (Some(v0), Some(b)) = (delta, band) {
        let i0 = h.xs.index_of(0.0).ok_or_else(|| Error::Resolution {
            what: "delta-barrier jump conditions need x = 0 on the grid".into(),
        })?;
        let mut m = (b / dx).ceil() as usize;
        m += m % 2;
        if i0 < m.max(4) || i0 + m.max(4) >= nx {
            return Err(Error::Resolution {
                what: format!("barrier band of half-width {b} does not fit the grid"),
            });
        }
        let (il, ir) = (i0 - m, i0 + m);
        for n in 1..=3 {
            let mut num = 0.0;
            let mut den = 0.0;
            let mut alt = 0.0;
            for ti in t_range.clone() {
                let phin = h.phi[n].row(ti);
                let jump = phin[ir] - phin[il];
                let dtrow: Vec<Complex64> = dts[n - 1].row(ti).iter().map(|v| mi * v).collect();
                // The integrand may jump at the barrier: use one-sided limits there.
                let left = simpson(&dtrow, il, i0, (dtrow[il], one_sided_value(&dtrow, i0, -1)), dx);
                let right = simpson(&dtrow, i0, ir, (one_sided_value(&dtrow, i0, 1), dtrow[ir]), dx);
                let integral = left + right;
                let mut pot = Complex64::default();
                if n >= 2 {
                    let row: Vec<Complex64> = h.phi[n - 2].row(ti).to_vec();
                    let mean = 0.5 * (one_sided(&row, i0, 1, dx) + one_sided(&row, i0, -1, dx));
                    pot = -((n - 1) as f64) * kappa * v0 * mean;
                }
                if n == 3 {
                    // δ(x_S) part of φ⁽²⁾, of weight (m/ħ²)V₀φ⁽⁰⁾(0, t).
                    pot += mi * kappa * v0 * dts[0][(ti, i0)];
                }
                let rhs = integral + pot;
                num += (jump - rhs).norm_sqr();
                den += jump.norm_sqr();
                alt += rhs.norm_sqr();
            }
            jumps[n - 1] = relative(num.sqrt(), den.sqrt(), alt.sqrt());
        }
    }

    let worst = relations.iter().chain(&jumps).fold(0.0_f64, |a, &b| a.max(b));
    Ok(HierarchyReport {
        relations,
        jumps,
        threshold: opts.tolerance,
        pass: worst <= opts.tolerance,
    })
}
