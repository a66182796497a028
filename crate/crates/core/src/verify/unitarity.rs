use super::report::UnitarityReport;
use crate::error::{Error, Result};
use crate::targets::DensityTriple;


/// Mass drift of sampled densities relative to the first time sample, with
/// masses from the trapezoid rule on the sample grid.
pub fn check_unitarity(d: &DensityTriple, tolerance: f64) -> Result<UnitarityReport> {
    let masses: Vec<f64> = (0..d.times.len()).map(|i| d.mass(i)).collect();
    check_mass_series(&masses, tolerance)
}

/// Drift of a series of total masses relative to the first.
pub fn check_mass_series(masses: &[f64], tolerance: f64) -> Result<UnitarityReport> {
    if masses.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: masses.len(),
        });
    }
    let m0 = masses[0];
    let drift = masses.iter().map(|m| (m - m0).abs()).fold(0.0, f64::max);
    let relative_drift = if m0 != 0.0 { drift / m0.abs() } else { drift };
    Ok(UnitarityReport {
        drift,
        relative_drift,
        reference_mass: m0,
        pass: relative_drift < tolerance,
    })
}
