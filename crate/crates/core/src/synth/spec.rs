use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative ridge used when none is configured.
pub const DEFAULT_RIDGE: f64 = 1e-8;

/// Relative ridge of the desk-scale synthesis runs. The masked rectangle is
/// unconstrained by the target, and this ridge picks a small-norm completion
/// there.
pub const DESK_RIDGE: f64 = 1e-3;

/// Excluded rectangle `|x_S| < space`, `|t| < time` around the crossing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mask {
    pub space: f64,
    pub time: f64,
}

impl Mask {
    /// `|x_S| < πΔx`, `|t| < (π/2)Δx`.
    pub fn for_width(dx: f64) -> Self {
        Self {
            space: PI * dx,
            time: 0.5 * PI * dx,
        }
    }
}

/// Weighted space-time scalar product over `[−L, L] × [−T, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarProductSpec {
    /// Mass-density weight.
    pub w0: f64,
    /// Momentum-density weight.
    pub w1: f64,
    /// Energy-density weight.
    pub w2: f64,
    pub half_time: f64,
    pub mask: Option<Mask>,
    /// Ridge `λ` relative to the mean Gram diagonal: the solve uses
    /// `G + λ·trace(G)/dim(G)·I`. `None` selects [`DEFAULT_RIDGE`].
    pub ridge: Option<f64>,
}

impl ScalarProductSpec {
    /// Channel weights `1, 1/(mv)², 1/(½mv²)²`.
    pub fn normalized_weights(mass: f64, speed: f64, half_time: f64) -> Self {
        let p = mass * speed;
        let e = 0.5 * mass * speed * speed;
        Self {
            w0: 1.0,
            w1: 1.0 / (p * p),
            w2: 1.0 / (e * e),
            half_time,
            mask: None,
            ridge: None,
        }
    }

    pub fn with_mask(mut self, mask: Option<Mask>) -> Self {
        self.mask = mask;
        self
    }

    pub fn with_ridge(mut self, ridge: Option<f64>) -> Self {
        self.ridge = ridge;
        self
    }

    pub fn validate(&self, half_width: f64) -> Result<()> {
        for (name, w) in [("w0", self.w0), ("w1", self.w1), ("w2", self.w2)] {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::invalid(name, "weights must be finite and nonnegative"));
            }
        }
        if self.w0 + self.w1 + self.w2 <= 0.0 {
            return Err(Error::invalid("w0", "at least one weight must be positive"));
        }
        if !(self.half_time > 0.0 && self.half_time.is_finite()) {
            return Err(Error::invalid("half_time", "must be positive"));
        }
        if let Some(m) = self.mask {
            if !(m.space >= 0.0 && m.time >= 0.0) {
                return Err(Error::invalid("mask", "widths must be nonnegative"));
            }
            if m.space >= half_width || m.time >= self.half_time {
                return Err(Error::invalid("mask", "rectangle must lie strictly inside the domain"));
            }
        }
        if let Some(r) = self.ridge {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::invalid("ridge", "must be nonnegative"));
            }
        }
        Ok(())
    }

    /// Mask rectangle, with zero widths when disabled.
    pub(crate) fn mask_or_empty(&self) -> Mask {
        self.mask.unwrap_or(Mask { space: 0.0, time: 0.0 })
    }
}
