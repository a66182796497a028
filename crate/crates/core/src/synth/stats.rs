use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::targets::DensityTriple;

/// `ρ⁴`-weighted centre and width of one density profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketMoment {
    pub mean: f64,
    pub sigma: f64,
}

/// Per-time packet centre `x_M` and width `σ_x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacketStats {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub sigma: Vec<f64>,
}

/// `x_M = ∫xρ⁴ / ∫ρ⁴`, `σ_x² = ∫(x − x_M)²ρ⁴ / ∫ρ⁴` by the trapezoid rule.
pub fn packet_stats(xs: &Grid1D, rho: &[f64]) -> Result<PacketMoment> {
    if rho.len() != xs.len() {
        return Err(Error::Dimension {
            expected: xs.len(),
            got: rho.len(),
        });
    }
    let w: Vec<f64> = rho.iter().map(|r| r.powi(4)).collect();
    let norm = xs.trapezoid(&w);
    if !(norm > 0.0) {
        return Err(Error::ZeroDensity);
    }
    let pts = xs.points();
    let first: Vec<f64> = pts.iter().zip(&w).map(|(x, w)| x * w).collect();
    let mean = xs.trapezoid(&first) / norm;
    let second: Vec<f64> = pts.iter().zip(&w).map(|(x, w)| (x - mean).powi(2) * w).collect();
    let sigma = (xs.trapezoid(&second) / norm).max(0.0).sqrt();
    Ok(PacketMoment { mean, sigma })
}

/// [`packet_stats`] of every time row of `d.rho`.
pub fn packet_series(d: &DensityTriple) -> Result<PacketStats> {
    let mut out = PacketStats {
        times: d.times.clone(),
        mean: Vec::with_capacity(d.times.len()),
        sigma: Vec::with_capacity(d.times.len()),
    };
    for row in d.rho.rows() {
        let m = packet_stats(&d.xs, &row.to_vec())?;
        out.mean.push(m.mean);
        out.sigma.push(m.sigma);
    }
    Ok(out)
}
