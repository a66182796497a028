use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{BasisSet, ModeSolution};
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::targets::{DensityTriple, Hierarchy, Mixture, TargetTrajectory};

/// Anything that yields `(ρ, ℘, ε)` at a space-time point.
pub trait SpaceTimeDensities: Sync {
    fn densities_at(&self, x: f64, t: f64) -> [Complex64; 3];

    /// Largest panel widths `(space, time)` that resolve the shape.
    fn resolution(&self) -> Option<(f64, f64)> {
        None
    }

    /// Largest `|x|` reached for `|t| ≤ half_time`, if bounded.
    fn reach(&self, _half_time: f64) -> Option<f64> {
        None
    }
}

impl SpaceTimeDensities for TargetTrajectory {
    fn densities_at(&self, x: f64, t: f64) -> [Complex64; 3] {
        let (r, p, e) = self.densities(x, t);
        [r.into(), p.into(), e.into()]
    }

    fn resolution(&self) -> Option<(f64, f64)> {
        let mut w = self.mollifier.width;
        if let Some((g1, g2)) = self.counterterms {
            w = w.min(g1.width).min(g2.width);
        }
        Some((w / 6.0, w / (6.0 * self.speed)))
    }

    fn reach(&self, half_time: f64) -> Option<f64> {
        Some(self.extent(half_time))
    }
}

impl SpaceTimeDensities for Mixture {
    fn densities_at(&self, x: f64, _t: f64) -> [Complex64; 3] {
        let (r, p, e) = self.densities(x).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
        [r.into(), p.into(), e.into()]
    }
}

/// Identically zero densities.
pub struct ZeroTarget;

impl SpaceTimeDensities for ZeroTarget {
    fn densities_at(&self, _x: f64, _t: f64) -> [Complex64; 3] {
        [Complex64::default(); 3]
    }
}

/// Densities of `φ_ij = f_i(x) f_j(y) e^{iΩt}`, `Ω = ω_j − ω_i`:
/// `ρ = f_i f_j`, `℘ = −(iħ/2)(f_i′f_j − f_i f_j′)`,
/// `ε = (ħ²/4m)(k_i² + k_j²) f_i f_j`, all times `e^{iΩt}`.
#[derive(Debug, Clone, Copy)]
pub struct PairDensity {
    pub mode_i: ModeSolution,
    pub mode_j: ModeSolution,
    pub omega: f64,
    hbar: f64,
    energy_factor: f64,
}

impl PairDensity {
    pub fn eval(&self, x: f64, t: f64) -> Result<[Complex64; 3]> {
        let (fi, fj) = (self.mode_i.value(x)?, self.mode_j.value(x)?);
        let (di, dj) = (self.mode_i.derivative(x)?, self.mode_j.derivative(x)?);
        let phase = Complex64::from_polar(1.0, self.omega * t);
        let ff = fi * fj;
        let w = di * fj - fi * dj;
        Ok([
            phase * ff,
            phase * Complex64::new(0.0, -0.5 * self.hbar * w),
            phase * (self.energy_factor * ff),
        ])
    }
}

impl SpaceTimeDensities for PairDensity {
    fn densities_at(&self, x: f64, t: f64) -> [Complex64; 3] {
        self.eval(x, t).unwrap_or([Complex64::new(f64::NAN, 0.0); 3])
    }
}

pub fn pair_densities(i: usize, j: usize, basis: &BasisSet) -> Result<PairDensity> {
    let mi = *basis.mode(i)?;
    let mj = *basis.mode(j)?;
    let c = basis.constants();
    Ok(PairDensity {
        mode_i: mi,
        mode_j: mj,
        omega: mj.frequency - mi.frequency,
        hbar: c.hbar,
        energy_factor: energy_factor(c.hbar, c.mass, mi.wavenumber, mj.wavenumber),
    })
}

/// `(ħ²/2m) · ½(k_i² + k_j²)`.
pub(crate) fn energy_factor(hbar: f64, mass: f64, ki: f64, kj: f64) -> f64 {
    hbar * hbar / (4.0 * mass) * (ki * ki + kj * kj)
}

/// Which real combination of `φ_ij` and `φ_ji` an unknown multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    /// `φ_ii`.
    Diagonal,
    /// `φ_ij + φ_ji`.
    Plus,
    /// `i(φ_ij − φ_ji)`.
    Minus,
}

/// One real unknown: pair `(i, j)` with `i ≤ j` and its combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealElement {
    pub i: usize,
    pub j: usize,
    pub kind: ElementKind,
}

/// Real unknowns in pair order: `(0,0), (0,1)±, …, (1,1), (1,2)±, …`.
pub fn real_layout(modes: usize) -> Vec<RealElement> {
    let mut out = Vec::with_capacity(modes * modes);
    for i in 0..modes {
        out.push(RealElement {
            i,
            j: i,
            kind: ElementKind::Diagonal,
        });
        for j in i + 1..modes {
            out.push(RealElement { i, j, kind: ElementKind::Plus });
            out.push(RealElement { i, j, kind: ElementKind::Minus });
        }
    }
    out
}

/// Hermitian `C_ij` over modes `0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    values: Array2<Complex64>,
}

impl CoefficientMatrix {
    pub fn zeros(modes: usize) -> Self {
        Self {
            values: Array2::zeros((modes, modes)),
        }
    }

    /// Rejects matrices that are not Hermitian within `1e−10` (relative).
    pub fn from_matrix(values: Array2<Complex64>) -> Result<Self> {
        let (r, c) = values.dim();
        if r != c {
            return Err(Error::Shape(format!("coefficient matrix is {r}×{c}")));
        }
        let m = Self { values };
        let scale = m.values.iter().fold(0.0_f64, |a, v| a.max(v.norm()));
        let dev = m.hermiticity_deviation();
        if dev > 1e-10 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Symmetry { deviation: dev });
        }
        Ok(m)
    }

    /// From the real unknowns of [`real_layout`]: `C_ij = a + ib`, `C_ji = a − ib`.
    pub fn from_real(modes: usize, real: &[f64]) -> Result<Self> {
        if real.len() != modes * modes {
            return Err(Error::Dimension {
                expected: modes * modes,
                got: real.len(),
            });
        }
        let mut m = Self::zeros(modes);
        let mut it = real.iter();
        for i in 0..modes {
            m.values[(i, i)] = Complex64::new(*it.next().expect("length checked"), 0.0);
            for j in i + 1..modes {
                let a = *it.next().expect("length checked");
                let b = *it.next().expect("length checked");
                m.values[(i, j)] = Complex64::new(a, b);
                m.values[(j, i)] = Complex64::new(a, -b);
            }
        }
        Ok(m)
    }

    pub fn to_real(&self) -> Vec<f64> {
        let n = self.modes();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            out.push(self.values[(i, i)].re);
            for j in i + 1..n {
                out.push(self.values[(i, j)].re);
                out.push(self.values[(i, j)].im);
            }
        }
        out
    }

    pub fn modes(&self) -> usize {
        self.values.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[(i, j)]
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.values
    }

    /// `max |C_ij − C_ji*|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.modes();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.values[(i, j)] - self.values[(j, i)].conj()).norm());
            }
        }
        dev
    }
}

/// `Σ C_ij φ_ij` over a basis.
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub basis: BasisSet,
    pub coefficients: CoefficientMatrix,
}

impl SpectralField {
    pub fn new(basis: BasisSet, coefficients: CoefficientMatrix) -> Result<Self> {
        if coefficients.modes() != basis.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: coefficients.modes(),
            });
        }
        Ok(Self { basis, coefficients })
    }

    /// Per-mode `(f, f′)` at `x` and phases `e^{iωt}`.
    fn mode_data(&self, x: f64, t: f64) -> (Vec<f64>, Vec<f64>, Vec<Complex64>) {
        let modes = self.basis.modes();
        let f = modes.iter().map(|m| m.value_unchecked(x)).collect();
        let d = modes.iter().map(|m| m.derivative_unchecked(x)).collect();
        let ph = modes.iter().map(|m| Complex64::from_polar(1.0, m.frequency * t)).collect();
        (f, d, ph)
    }

    /// `φ⁽ⁿ⁾` at one point, from `∂ⁿ_D [f_i(x_S + x_D/2) f_j(x_S − x_D/2)]`
    /// using the regular parts `f″ = −k²f`, `f‴ = −k²f′`.
    pub fn components_at(&self, x: f64, t: f64) -> [Complex64; 4] {
        let (f, d, ph) = self.mode_data(x, t);
        let k2: Vec<f64> = self.basis.modes().iter().map(|m| m.wavenumber * m.wavenumber).collect();
        let deriv = |k: usize, n: usize| -> f64 {
            match k {
                0 => f[n],
                1 => d[n],
                2 => -k2[n] * f[n],
                _ => -k2[n] * d[n],
            }
        };
        let c = self.coefficients.matrix();
        let n = f.len();
        let mut out = [Complex64::default(); 4];
        for i in 0..n {
            for j in 0..n {
                let cij = c[(i, j)];
                if cij == Complex64::default() {
                    continue;
                }
                let w = cij * ph[i].conj() * ph[j];
                for (order, slot) in out.iter_mut().enumerate() {
                    let mut s = 0.0;
                    for k in 0..=order {
                        let sign = if (order - k) % 2 == 0 { 1.0 } else { -1.0 };
                        s += binomial(order, k) * sign * deriv(k, i) * deriv(order - k, j);
                    }
                    *slot += w * (s / 2f64.powi(order as i32));
                }
            }
        }
        out
    }

    /// Densities on a grid (rows per time), imaginary parts dropped.
    pub fn reconstruct(&self, xs: &Grid1D, times: &[f64]) -> Result<(DensityTriple, f64)> {
        self.check_grid(xs)?;
        let pts = xs.points();
        let rows: Vec<Vec<[Complex64; 3]>> = times
            .par_iter()
            .map(|&t| pts.iter().map(|&x| self.densities_at(x, t)).collect())
            .collect();
        let mut out = DensityTriple::zeros(*xs, times.to_vec());
        let mut max_im: f64 = 0.0;
        for (ti, row) in rows.into_iter().enumerate() {
            for (xi, v) in row.into_iter().enumerate() {
                out.rho[(ti, xi)] = v[0].re;
                out.momentum[(ti, xi)] = v[1].re;
                out.energy[(ti, xi)] = v[2].re;
                max_im = max_im.max(v[0].im.abs()).max(v[1].im.abs()).max(v[2].im.abs());
            }
        }
        Ok((out, max_im))
    }

    /// `φ⁽⁰⁾ … φ⁽³⁾` on a grid.
    pub fn hierarchy(&self, xs: &Grid1D, times: &[f64]) -> Result<Hierarchy> {
        self.check_grid(xs)?;
        let pts = xs.points();
        let rows: Vec<Vec<[Complex64; 4]>> = times
            .par_iter()
            .map(|&t| pts.iter().map(|&x| self.components_at(x, t)).collect())
            .collect();
        let shape = (times.len(), xs.len());
        let phi = std::array::from_fn(|n| Array2::from_shape_fn(shape, |(ti, xi)| rows[ti][xi][n]));
        Ok(Hierarchy {
            xs: *xs,
            times: times.to_vec(),
            phi,
        })
    }

    fn check_grid(&self, xs: &Grid1D) -> Result<()> {
        let l = self.basis.half_width();
        if xs.lower() < -l * (1.0 + 1e-12) || xs.upper() > l * (1.0 + 1e-12) {
            return Err(Error::Domain {
                x: if xs.upper() > l { xs.upper() } else { xs.lower() },
                lower: -l,
                upper: l,
            });
        }
        Ok(())
    }
}

impl SpaceTimeDensities for SpectralField {
    fn densities_at(&self, x: f64, t: f64) -> [Complex64; 3] {
        let (f, d, ph) = self.mode_data(x, t);
        let c = self.coefficients.matrix();
        let consts = self.basis.constants();
        let modes = self.basis.modes();
        let mut out = [Complex64::default(); 3];
        for i in 0..f.len() {
            for j in 0..f.len() {
                let cij = c[(i, j)];
                if cij == Complex64::default() {
                    continue;
                }
                let w = cij * ph[i].conj() * ph[j];
                let ff = f[i] * f[j];
                out[0] += w * ff;
                out[1] += w * Complex64::new(0.0, -0.5 * consts.hbar * (d[i] * f[j] - f[i] * d[j]));
                out[2] += w * (energy_factor(consts.hbar, consts.mass, modes[i].wavenumber, modes[j].wavenumber) * ff);
            }
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
