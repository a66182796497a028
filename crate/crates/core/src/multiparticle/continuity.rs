use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::TwoParticleField;
use super::separability::factorize;
use crate::error::{Error, Result};
use crate::numerics::stencil_derivative;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityResidual {
    pub particle1: f64,
    pub particle2: f64,
}

/// Residuals of `∂ₓ𝒫ᵢ = −mᵢ ∂ₜρᵢ` for the unit-mass factors, each the
/// discrete L² norm of the mismatch over interior samples divided by that of
/// the right-hand side.
pub fn check_decoupled_continuity(fields: &[TwoParticleField], times: &[f64]) -> Result<ContinuityResidual> {
    if fields.len() != times.len() {
        return Err(Error::Dimension {
            expected: times.len(),
            got: fields.len(),
        });
    }
    if times.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: times.len(),
        });
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) || times.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(1.0)) {
        return Err(Error::Shape("times must be uniformly increasing".into()));
    }
    let first = &fields[0];
    if fields.iter().any(|f| f.x1 != first.x1 || f.x2 != first.x2) {
        return Err(Error::Shape("all fields must share their grids".into()));
    }
    let factors = fields.iter().map(factorize).collect::<Result<Vec<_>>>()?;
    let hbar = first.hbar;
    let (m1, m2) = first.masses;
    let residual = |rho: Vec<Vec<Complex64>>, g: Vec<Vec<Complex64>>, mass: f64, h: f64| -> f64 {
        let nt = rho.len();
        let nx = rho[0].len();
        let t_skip = if nt >= 5 { 2 } else { 1 };
        let mut num = 0.0;
        let mut den = 0.0;
        let mut lhs_norm = 0.0;
        for (ti, gt) in g.iter().enumerate().take(nt - t_skip).skip(t_skip) {
            let p: Vec<Complex64> = gt.iter().map(|z| Complex64::new(0.0, -hbar) * z).collect();
            for xi in 2..nx.saturating_sub(2) {
                let lhs = stencil_derivative(&p, xi, h);
                let col: Vec<Complex64> = rho.iter().map(|r| r[xi]).collect();
                let rhs = -mass * stencil_derivative(&col, ti, dt);
                num += (lhs - rhs).norm_sqr();
                den += rhs.norm_sqr();
                lhs_norm += lhs.norm_sqr();
            }
        }
        if den > 0.0 {
            (num / den).sqrt()
        } else if lhs_norm > 0.0 {
            (num / lhs_norm).sqrt()
        } else {
            0.0
        }
    };
    let particle1 = residual(
        factors.iter().map(|f| f.rho1.clone()).collect(),
        factors.iter().map(|f| f.g1.clone()).collect(),
        m1,
        first.x1.spacing(),
    );
    let particle2 = residual(
        factors.iter().map(|f| f.rho2.clone()).collect(),
        factors.iter().map(|f| f.g2.clone()).collect(),
        m2,
        first.x2.spacing(),
    );
    Ok(ContinuityResidual { particle1, particle2 })
}
