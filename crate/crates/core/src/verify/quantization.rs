use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizationResult {
    pub passes: bool,
    /// Nearest integer `n` with `(E_a − E_b)/ħ ≈ 2πn/T_cl`.
    pub nearest: i64,
    /// `|(E_a − E_b)T_cl/(2πħ) − n|`.
    pub residual: f64,
}

/// Whether `(E_a − E_b)/ħ` is an integer multiple of `2π/T_cl`.
pub fn quantization_check(e_a: f64, e_b: f64, period: f64, hbar: f64, tolerance: f64) -> Result<QuantizationResult> {
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::invalid("period", "revolution time must be positive"));
    }
    if !(hbar > 0.0) {
        return Err(Error::invalid("hbar", "must be positive"));
    }
    let ratio = (e_a - e_b) * period / (std::f64::consts::TAU * hbar);
    let nearest = ratio.round();
    let residual = (ratio - nearest).abs();
    Ok(QuantizationResult {
        passes: residual <= tolerance,
        nearest: nearest as i64,
        residual,
    })
}
