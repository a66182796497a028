use super::report::LocalizationReport;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::synth::{packet_stats, PacketStats};
use crate::targets::Mollifier;

/// `ρ⁴`-weighted width of the mollifier itself.
pub fn mollifier_sigma(mollifier: &Mollifier) -> Result<f64> {
    let s = mollifier.support();
    let xs = Grid1D::symmetric(s, 4001)?;
    let rho: Vec<f64> = xs.points().iter().map(|&x| mollifier.value(x)).collect();
    Ok(packet_stats(&xs, &rho)?.sigma)
}

/// Flags `σ_x(±T/2) > factor · σ_f`, using the time samples nearest `±T/2`.
pub fn check_localization(stats: &PacketStats, mollifier: &Mollifier, half_time: f64, factor: f64) -> Result<LocalizationReport> {
    if stats.times.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let nearest = |t: f64| {
        (0..stats.times.len())
            .min_by(|&a, &b| (stats.times[a] - t).abs().total_cmp(&(stats.times[b] - t).abs()))
            .expect("nonempty")
    };
    let reference_sigma = mollifier_sigma(mollifier)?;
    let sigma_before = stats.sigma[nearest(-0.5 * half_time)];
    let sigma_after = stats.sigma[nearest(0.5 * half_time)];
    let limit = factor * reference_sigma;
    Ok(LocalizationReport {
        reference_sigma,
        sigma_before,
        sigma_after,
        localized: sigma_before <= limit && sigma_after <= limit,
    })
}
