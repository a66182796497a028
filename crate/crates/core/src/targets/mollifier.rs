use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MollifierKind {
    /// `8/(3πΔx) cos⁴(x/Δx)` on `|x| < πΔx/2`.
    Cos4,
    /// Normal density with `σ = Δx/2`.
    Gaussian,
}

/// Even, unit-mass approximation of the Dirac delta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mollifier {
    pub width: f64,
    pub kind: MollifierKind,
}

/// Number of standard deviations treated as the Gaussian support.
const GAUSSIAN_CUTOFF: f64 = 9.0;

impl Mollifier {
    pub fn new(width: f64, kind: MollifierKind) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::invalid("width", "mollifier width must be positive"));
        }
        Ok(Self { width, kind })
    }

    pub fn cos4(width: f64) -> Result<Self> {
        Self::new(width, MollifierKind::Cos4)
    }

    pub fn gaussian(width: f64) -> Result<Self> {
        Self::new(width, MollifierKind::Gaussian)
    }

    /// Half-width of the region outside which the mollifier vanishes (exactly
    /// for cos4, below `e^{-40}` relative for the Gaussian).
    pub fn support(&self) -> f64 {
        match self.kind {
            MollifierKind::Cos4 => 0.5 * PI * self.width,
            MollifierKind::Gaussian => GAUSSIAN_CUTOFF * self.sigma(),
        }
    }

    fn sigma(&self) -> f64 {
        0.5 * self.width
    }

    /// `f⁽ᵈ⁾(x)` for `d ≤ 4`.
    pub fn eval(&self, x: f64, d: usize) -> Result<f64> {
        if d > 4 {
            return Err(Error::MollifierOrder(d));
        }
        Ok(self.eval_unchecked(x, d))
    }

    pub(crate) fn eval_unchecked(&self, x: f64, d: usize) -> f64 {
        match self.kind {
            MollifierKind::Cos4 => {
                let w = self.width;
                if x.abs() >= 0.5 * PI * w {
                    return 0.0;
                }
                let c = 8.0 / (3.0 * PI * w);
                let u = x / w;
                let shift = d as f64 * 0.5 * PI;
                let two = 2f64.powi(d as i32);
                let four = 4f64.powi(d as i32);
                let base = if d == 0 { 0.375 } else { 0.0 };
                c / w.powi(d as i32) * (base + 0.5 * two * (2.0 * u + shift).cos() + 0.125 * four * (4.0 * u + shift).cos())
            }
            MollifierKind::Gaussian => {
                let s = self.sigma();
                let z = x / s;
                let g = (-0.5 * z * z).exp() / ((2.0 * PI).sqrt() * s);
                let he = match d {
                    0 => 1.0,
                    1 => z,
                    2 => z * z - 1.0,
                    3 => z * z * z - 3.0 * z,
                    _ => z.powi(4) - 6.0 * z * z + 3.0,
                };
                let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
                sign * he * g / s.powi(d as i32)
            }
        }
    }

    /// `f(x)` for `d = 0`, shorthand used in hot loops.
    pub fn value(&self, x: f64) -> f64 {
        self.eval_unchecked(x, 0)
    }
}
