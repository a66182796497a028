use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid of `count` points spanning `[lower, upper]` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    lower: f64,
    upper: f64,
    count: usize,
}

impl Grid1D {
    pub fn new(lower: f64, upper: f64, count: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) {
            return Err(Error::invalid("grid", "bounds must be finite"));
        }
        if upper <= lower {
            return Err(Error::invalid(
                "grid",
                format!("upper bound {upper} must exceed lower bound {lower}"),
            ));
        }
        if count < 2 {
            return Err(Error::invalid("grid", format!("point count {count} < 2")));
        }
        Ok(Self {
            lower,
            upper,
            count,
        })
    }

    /// Grid symmetric about zero: `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        Self::new(-half_width, half_width, count)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / (self.count - 1) as f64
    }

    /// Point `i`. On grids symmetric about zero, mirrored indices give exactly
    /// negated values.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        if self.is_symmetric() {
            if 2 * i + 1 == self.count {
                return 0.0;
            }
            if 2 * i + 1 > self.count {
                return -self.point(self.count - 1 - i);
            }
        }
        if i == self.count - 1 {
            return self.upper;
        }
        self.lower + i as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.lower == -self.upper
    }

    /// Index of the grid point equal to `x` within a hundredth of a cell.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let s = (x - self.lower) / self.spacing();
        let i = s.round();
        if i < 0.0 || i as usize >= self.count || (s - i).abs() > 1e-2 {
            None
        } else {
            Some(i as usize)
        }
    }

    /// Trapezoid-rule integral of samples on this grid.
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.count);
        let inner: f64 = values[1..self.count - 1].iter().sum();
        self.spacing() * (inner + 0.5 * (values[0] + values[self.count - 1]))
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}
