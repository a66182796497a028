use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::targets::TargetTrajectory;

/// `φ` and `∂_{x_D}φ` of one particle on the `x_D = 0` slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleParticleSlices {
    pub xs: Grid1D,
    pub phi0: Vec<Complex64>,
    pub phi1: Vec<Complex64>,
}

impl SingleParticleSlices {
    pub fn new(xs: Grid1D, phi0: Vec<Complex64>, phi1: Vec<Complex64>) -> Result<Self> {
        if phi0.len() != xs.len() || phi1.len() != xs.len() {
            return Err(Error::Dimension {
                expected: xs.len(),
                got: phi0.len().min(phi1.len()),
            });
        }
        Ok(Self { xs, phi0, phi1 })
    }

    /// Slices of a single-particle target at time `t`.
    pub fn from_target(target: &TargetTrajectory, xs: Grid1D, t: f64) -> Result<Self> {
        let pts = xs.points();
        let phi0 = pts.iter().map(|&x| target.phi(0, x, t)).collect();
        let phi1 = pts.iter().map(|&x| target.phi(1, x, t)).collect();
        Self::new(xs, phi0, phi1)
    }
}

/// Two-particle quantum matrix on the `x₁D = x₂D = 0` slice: the diagonal
/// values and the first derivatives in `x₁D` and `x₂D`, indexed `[x₁, x₂]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleField {
    pub x1: Grid1D,
    pub x2: Grid1D,
    pub diagonal: Array2<Complex64>,
    pub d1: Array2<Complex64>,
    pub d2: Array2<Complex64>,
    pub masses: (f64, f64),
    pub hbar: f64,
}

impl TwoParticleField {
    pub fn new(
        x1: Grid1D,
        x2: Grid1D,
        diagonal: Array2<Complex64>,
        d1: Array2<Complex64>,
        d2: Array2<Complex64>,
        masses: (f64, f64),
        hbar: f64,
    ) -> Result<Self> {
        let shape = (x1.len(), x2.len());
        for (name, a) in [("diagonal", &diagonal), ("d1", &d1), ("d2", &d2)] {
            if a.dim() != shape {
                return Err(Error::Shape(format!("{name} is {:?}, grids give {shape:?}", a.dim())));
            }
        }
        let (m1, m2) = masses;
        if !(m1 > 0.0 && m2 > 0.0) {
            return Err(Error::invalid("masses", "must be positive"));
        }
        if ((m1 - m2) / m1.max(m2)).abs() < 1e-12 {
            return Err(Error::invalid("masses", "particles must have distinct masses"));
        }
        if !(hbar > 0.0) {
            return Err(Error::invalid("hbar", "must be positive"));
        }
        Ok(Self {
            x1,
            x2,
            diagonal,
            d1,
            d2,
            masses,
            hbar,
        })
    }

    /// `φ = φ_a(x₁) φ_b(x₂)`.
    pub fn product(a: &SingleParticleSlices, b: &SingleParticleSlices, masses: (f64, f64), hbar: f64) -> Result<Self> {
        let shape = (a.xs.len(), b.xs.len());
        let outer = |u: &[Complex64], v: &[Complex64]| Array2::from_shape_fn(shape, |(i, j)| u[i] * v[j]);
        Self::new(
            a.xs,
            b.xs,
            outer(&a.phi0, &b.phi0),
            outer(&a.phi1, &b.phi0),
            outer(&a.phi0, &b.phi1),
            masses,
            hbar,
        )
    }

    /// Multiplies every slice by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.diagonal.mapv_inplace(|v| v * c);
        out.d1.mapv_inplace(|v| v * c);
        out.d2.mapv_inplace(|v| v * c);
        out
    }

    /// `self + other` on the same grids.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.x1 != other.x1 || self.x2 != other.x2 {
            return Err(Error::Shape("fields live on different grids".into()));
        }
        let mut out = self.clone();
        out.diagonal += &other.diagonal;
        out.d1 += &other.d1;
        out.d2 += &other.d2;
        Ok(out)
    }
}
