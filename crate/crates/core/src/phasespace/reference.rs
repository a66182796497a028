//! Closed-form free-particle and harmonic-oscillator references.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::field::WignerField;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::units::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReferenceKind {
    /// Plane wave of momentum `p0`.
    FreePlane { p0: f64 },
    /// Particle released from `x = 0` with every momentum.
    FreePoint,
    /// Spreading Gaussian of initial width `dx0`.
    FreeGaussian { dx0: f64 },
    /// Oscillator ground state.
    HoGround { omega0: f64 },
    /// Classical orbit of energy `e0` and phase `phase`.
    HoClassical { omega0: f64, e0: f64, phase: f64 },
}

/// Wigner functions that are Dirac deltas, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhaseSpaceDelta {
    /// `δ(p − p0)`, uniform in `x`.
    MomentumShell { p0: f64 },
    /// `δ(x − p t/m)`.
    Shear { time: f64, mass: f64 },
    /// `δ(x − x0) δ(p − p0)`.
    Point { x0: f64, p0: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceField {
    Sampled(WignerField),
    Delta(PhaseSpaceDelta),
}

impl ReferenceKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ReferenceKind::FreePlane { p0 } if !p0.is_finite() => Err(Error::invalid("p0", "must be finite")),
            ReferenceKind::FreeGaussian { dx0 } if !(dx0 > 0.0 && dx0.is_finite()) => {
                Err(Error::invalid("dx0", "must be positive"))
            }
            ReferenceKind::HoGround { omega0 } if !(omega0 > 0.0 && omega0.is_finite()) => {
                Err(Error::invalid("omega0", "must be positive"))
            }
            ReferenceKind::HoClassical { omega0, e0, phase } => {
                if !(omega0 > 0.0 && omega0.is_finite()) {
                    Err(Error::invalid("omega0", "must be positive"))
                } else if !(e0 >= 0.0 && e0.is_finite()) {
                    Err(Error::invalid("e0", "must be nonnegative"))
                } else if !phase.is_finite() {
                    Err(Error::invalid("phase", "must be finite"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// `F(x, p, t)` for the kinds with a smooth Wigner function.
    pub fn wigner_value(&self, c: &Constants, x: f64, p: f64, t: f64) -> Result<f64> {
        self.validate()?;
        let Constants { mass, hbar, .. } = *c;
        match *self {
            ReferenceKind::FreeGaussian { dx0 } => {
                let s = x - p * t / mass;
                Ok((-2.0 * dx0 * dx0 * p * p / (hbar * hbar) - s * s / (2.0 * dx0 * dx0)).exp() / (PI * hbar))
            }
            ReferenceKind::HoGround { omega0 } => {
                let e = p * p / (2.0 * mass) + 0.5 * mass * omega0 * omega0 * x * x;
                Ok((-2.0 * e / (hbar * omega0)).exp() / (PI * hbar))
            }
            _ => Err(Error::Unsupported {
                kind: self.name(),
                hint: "this reference is a Dirac delta; use `delta`",
            }),
        }
    }

    /// Symbolic delta for the singular kinds.
    pub fn delta(&self, c: &Constants, t: f64) -> Result<PhaseSpaceDelta> {
        self.validate()?;
        match *self {
            ReferenceKind::FreePlane { p0 } => Ok(PhaseSpaceDelta::MomentumShell { p0 }),
            ReferenceKind::FreePoint => Ok(PhaseSpaceDelta::Shear { time: t, mass: c.mass }),
            ReferenceKind::HoClassical { omega0, e0, phase } => {
                let (x0, p0) = classical_orbit(c.mass, omega0, e0, phase, t);
                Ok(PhaseSpaceDelta::Point { x0, p0 })
            }
            _ => Err(Error::Unsupported {
                kind: self.name(),
                hint: "this reference is smooth; use `wigner_value`",
            }),
        }
    }

    /// Closed-form field at time `t`, sampled when smooth.
    pub fn solution(&self, c: &Constants, t: f64, xs: Grid1D, ps: Grid1D) -> Result<ReferenceField> {
        match self {
            ReferenceKind::FreeGaussian { .. } | ReferenceKind::HoGround { .. } => {
                self.validate()?;
                let this = *self;
                let cc = *c;
                Ok(ReferenceField::Sampled(WignerField::from_fn(xs, ps, *c, move |x, p| {
                    this.wigner_value(&cc, x, p, t).unwrap_or(f64::NAN)
                })))
            }
            _ => Ok(ReferenceField::Delta(self.delta(c, t)?)),
        }
    }

    /// Wave function for the kinds that come from a pure state.
    pub fn wave_function(&self, c: &Constants, t: f64) -> Result<Box<dyn Fn(f64) -> Complex64 + Send + Sync>> {
        self.validate()?;
        let Constants { mass, hbar, .. } = *c;
        match *self {
            ReferenceKind::FreePlane { p0 } => Ok(Box::new(move |x| {
                Complex64::from_polar(1.0, p0 / hbar * (x - p0 * t / (2.0 * mass)))
            })),
            ReferenceKind::FreeGaussian { dx0 } => {
                let alpha = Complex64::new(1.0, hbar * t / (2.0 * mass * dx0 * dx0));
                let amp = (1.0 / ((2.0 * PI).sqrt() * dx0 * alpha)).sqrt();
                Ok(Box::new(move |x| amp * (-(x * x) / (4.0 * dx0 * dx0 * alpha)).exp()))
            }
            ReferenceKind::HoGround { omega0 } => {
                let amp = (mass * omega0 / (PI * hbar)).powf(0.25);
                Ok(Box::new(move |x| {
                    Complex64::from_polar(amp * (-mass * omega0 * x * x / (2.0 * hbar)).exp(), -0.5 * omega0 * t)
                }))
            }
            _ => Err(Error::Unsupported {
                kind: self.name(),
                hint: "no normalizable wave function",
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ReferenceKind::FreePlane { .. } => "free-plane",
            ReferenceKind::FreePoint => "free-point",
            ReferenceKind::FreeGaussian { .. } => "free-gaussian",
            ReferenceKind::HoGround { .. } => "ho-ground",
            ReferenceKind::HoClassical { .. } => "ho-classical",
        }
    }
}

/// `Δx(t) = √(Δx₀² + ħ²t²/(4m²Δx₀²))`.
pub fn gaussian_width(c: &Constants, dx0: f64, t: f64) -> f64 {
    (dx0 * dx0 + c.hbar * c.hbar * t * t / (4.0 * c.mass * c.mass * dx0 * dx0)).sqrt()
}

/// `(x, p)` on the oscillator orbit of energy `e0`.
pub fn classical_orbit(mass: f64, omega0: f64, e0: f64, phase: f64, t: f64) -> (f64, f64) {
    let arg = omega0 * t + phase;
    let x = (2.0 * e0 / mass).sqrt() / omega0 * arg.sin();
    let p = (2.0 * mass * e0).sqrt() * arg.cos();
    (x, p)
}
