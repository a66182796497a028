use num_complex::Complex64;
use rayon::prelude::*;

use super::pairs::SpaceTimeDensities;
use super::spec::ScalarProductSpec;
use crate::error::{Error, Result};
use crate::numerics::segment_nodes;

/// Panel widths and node count for [`scalar_product`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeRule {
    pub space_panel: f64,
    pub time_panel: f64,
    pub nodes_per_panel: usize,
}

/// `w₀∬ρ_a*ρ_b + w₁∬℘_a*℘_b + w₂∬ε_a*ε_b` over `[−L, L] × [−T, T]` minus the
/// mask, by composite Gauss–Legendre quadrature.
pub fn scalar_product<A, B>(a: &A, b: &B, spec: &ScalarProductSpec, half_width: f64, rule: &SpaceTimeRule) -> Result<Complex64>
where
    A: SpaceTimeDensities + ?Sized,
    B: SpaceTimeDensities + ?Sized,
{
    spec.validate(half_width)?;
    if !(rule.space_panel > 0.0 && rule.time_panel > 0.0 && rule.nodes_per_panel > 0) {
        return Err(Error::invalid("rule", "panel widths and node count must be positive"));
    }
    let mask = spec.mask_or_empty();
    let breaks = |half: f64, inner: f64| {
        let mut v = vec![-half, -inner, 0.0, inner, half];
        v.dedup();
        v
    };
    let (xs, wx) = segment_nodes(&breaks(half_width, mask.space), rule.space_panel, rule.nodes_per_panel);
    let (ts, wt) = segment_nodes(&breaks(spec.half_time, mask.time), rule.time_panel, rule.nodes_per_panel);
    let w = [spec.w0, spec.w1, spec.w2];
    let rows: Vec<Result<Complex64>> = ts
        .par_iter()
        .zip(wt.par_iter())
        .map(|(&t, &wt)| {
            let mut s = Complex64::default();
            for (&x, &wx) in xs.iter().zip(&wx) {
                if x.abs() < mask.space && t.abs() < mask.time {
                    continue;
                }
                let (da, db) = (a.densities_at(x, t), b.densities_at(x, t));
                for c in 0..3 {
                    let v = da[c].conj() * db[c];
                    if !(v.re.is_finite() && v.im.is_finite()) {
                        return Err(Error::NonFiniteIntegrand { at: x });
                    }
                    s += w[c] * wx * v;
                }
            }
            Ok(wt * s)
        })
        .collect();
    rows.into_iter().sum()
}
