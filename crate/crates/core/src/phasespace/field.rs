use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::units::Constants;

/// `φ(x_S, x_D)` sampled on an `x_S × x_D` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumMatrixField {
    pub xs: Grid1D,
    pub xd: Grid1D,
    /// Indexed `[x_S, x_D]`.
    pub values: Array2<Complex64>,
    pub constants: Constants,
}

impl QuantumMatrixField {
    pub fn new(xs: Grid1D, xd: Grid1D, values: Array2<Complex64>, constants: Constants) -> Result<Self> {
        if values.dim() != (xs.len(), xd.len()) {
            return Err(Error::Shape(format!(
                "values {:?} vs grids ({}, {})",
                values.dim(),
                xs.len(),
                xd.len()
            )));
        }
        Ok(Self {
            xs,
            xd,
            values,
            constants,
        })
    }

    /// `φ(x_S, x_D) = Σ f(x_S, x_D)` sampled pointwise.
    pub fn from_fn<F>(xs: Grid1D, xd: Grid1D, constants: Constants, f: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let xsp = xs.points();
        let xdp = xd.points();
        let values = Array2::from_shape_fn((xs.len(), xd.len()), |(i, j)| f(xsp[i], xdp[j]));
        Self {
            xs,
            xd,
            values,
            constants,
        }
    }

    /// Largest `|φ(x_S, x_D) − φ*(x_S, −x_D)|`. Requires a symmetric `x_D` grid.
    pub fn hermiticity_deviation(&self) -> Result<f64> {
        if !self.xd.is_symmetric() {
            return Err(Error::invalid("x_D grid", "must be symmetric about zero"));
        }
        let n = self.xd.len();
        let mut dev: f64 = 0.0;
        for row in self.values.rows() {
            for j in 0..n / 2 + 1 {
                dev = dev.max((row[j] - row[n - 1 - j].conj()).norm());
            }
        }
        Ok(dev)
    }

    /// The diagonal slice `φ(x_S, 0)`.
    pub fn diagonal(&self) -> Result<Vec<Complex64>> {
        let j0 = self.zero_index()?;
        Ok(self.values.column(j0).to_vec())
    }

    pub(crate) fn zero_index(&self) -> Result<usize> {
        self.xd.index_of(0.0).ok_or_else(|| Error::Resolution {
            what: "x_D = 0 (grid has no point there)".into(),
        })
    }
}

/// Pure-state quantum matrix `φ(x, y) = ψ(x) ψ*(y)` in `(x_S, x_D)`
/// coordinates. Hermiticity is exact: mirrored `x_D` columns are filled with
/// conjugates.
pub fn pure_to_matrix<F>(psi: F, xs: Grid1D, xd: Grid1D, constants: Constants) -> Result<QuantumMatrixField>
where
    F: Fn(f64) -> Complex64,
{
    if !xd.is_symmetric() {
        return Err(Error::invalid("x_D grid", "must be symmetric about zero"));
    }
    let n = xd.len();
    let xsp = xs.points();
    let xdp = xd.points();
    let mut values = Array2::zeros((xs.len(), n));
    for (i, &x) in xsp.iter().enumerate() {
        for j in 0..n.div_ceil(2) {
            let half = 0.5 * xdp[j];
            let v = psi(x + half) * psi(x - half).conj();
            values[(i, j)] = v;
            values[(i, n - 1 - j)] = v.conj();
        }
        if n % 2 == 1 {
            let v = psi(x);
            values[(i, n / 2)] = Complex64::new(v.norm_sqr(), 0.0);
        }
    }
    QuantumMatrixField::new(xs, xd, values, constants)
}

/// Real phase-space field `F(x_S, p_S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub xs: Grid1D,
    pub ps: Grid1D,
    /// Indexed `[x_S, p_S]`.
    pub values: Array2<f64>,
    pub constants: Constants,
}

impl WignerField {
    pub fn from_fn<F>(xs: Grid1D, ps: Grid1D, constants: Constants, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64,
    {
        let xsp = xs.points();
        let psp = ps.points();
        let values = Array2::from_shape_fn((xs.len(), ps.len()), |(i, j)| f(xsp[i], psp[j]));
        Self {
            xs,
            ps,
            values,
            constants,
        }
    }

    /// Riemann sum over the grid (the fields handled here vanish at the
    /// edges, where this coincides with the trapezoid rule).
    pub fn integral(&self) -> f64 {
        self.values.sum() * self.xs.spacing() * self.ps.spacing()
    }

    /// `∫ F dp` as a function of `x_S`.
    pub fn position_marginal(&self) -> Vec<f64> {
        let dp = self.ps.spacing();
        self.values.rows().into_iter().map(|r| r.sum() * dp).collect()
    }

    /// `∫ F dx` as a function of `p_S`.
    pub fn momentum_marginal(&self) -> Vec<f64> {
        let dx = self.xs.spacing();
        self.values.columns().into_iter().map(|c| c.sum() * dx).collect()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Output of a generator: `H F` on the grid of `F` (generally complex).
#[derive(Debug, Clone, PartialEq)]
pub struct WignerRate {
    pub xs: Grid1D,
    pub ps: Grid1D,
    pub values: Array2<Complex64>,
}

impl WignerRate {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &WignerRate) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `∂F/∂t = H F / (iħ)`, real for real `F`.
    pub fn time_derivative(&self, hbar: f64) -> Array2<f64> {
        self.values.mapv(|v| (v / Complex64::new(0.0, hbar)).re)
    }
}
