use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Grid1D;

/// External potential `V(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialSpec {
    Zero,
    /// `V = k x`.
    Linear { slope: f64 },
    /// `V = k x²`.
    Quadratic { stiffness: f64 },
    /// `V = k x⁴`.
    Quartic { coefficient: f64 },
    /// `V = V₀ δ(x)`.
    DeltaBarrier { strength: f64 },
    /// Linearly interpolated samples, constant beyond the ends.
    Tabulated { grid: Grid1D, values: Vec<f64> },
}

impl PotentialSpec {
    /// `½ m ω₀² x²`.
    pub fn harmonic(mass: f64, omega0: f64) -> Self {
        PotentialSpec::Quadratic {
            stiffness: 0.5 * mass * omega0 * omega0,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            PotentialSpec::Zero => "zero",
            PotentialSpec::Linear { .. } => "linear",
            PotentialSpec::Quadratic { .. } => "quadratic",
            PotentialSpec::Quartic { .. } => "quartic",
            PotentialSpec::DeltaBarrier { .. } => "delta-barrier",
            PotentialSpec::Tabulated { .. } => "tabulated",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(name, "must be finite"))
            }
        };
        match self {
            PotentialSpec::Zero => Ok(()),
            PotentialSpec::Linear { slope } => finite("slope", *slope),
            PotentialSpec::Quadratic { stiffness } => finite("stiffness", *stiffness),
            PotentialSpec::Quartic { coefficient } => finite("coefficient", *coefficient),
            PotentialSpec::DeltaBarrier { strength } => {
                if *strength > 0.0 && strength.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid("strength", "delta barrier needs V₀ > 0"))
                }
            }
            PotentialSpec::Tabulated { grid, values } => {
                if values.len() != grid.len() {
                    return Err(Error::Dimension {
                        expected: grid.len(),
                        got: values.len(),
                    });
                }
                if values.iter().all(|v| v.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::invalid("values", "tabulated potential must be finite"))
                }
            }
        }
    }

    /// Pointwise value. The delta barrier has no pointwise value; callers
    /// handle it distributionally.
    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::Linear { slope } => slope * x,
            PotentialSpec::Quadratic { stiffness } => stiffness * x * x,
            PotentialSpec::Quartic { coefficient } => coefficient * x.powi(4),
            PotentialSpec::DeltaBarrier { .. } => {
                return Err(Error::Unsupported {
                    kind: "delta-barrier",
                    hint: "pointwise values are distributional; use the synth module",
                })
            }
            PotentialSpec::Tabulated { grid, values } => interpolate(grid, values, x),
        })
    }

    /// `V⁽ᵒʳᵈᵉʳ⁾(x)`; available for the polynomial kinds only.
    pub fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        if order == 0 {
            return self.value(x);
        }
        Ok(match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::Linear { slope } => {
                if order == 1 {
                    *slope
                } else {
                    0.0
                }
            }
            PotentialSpec::Quadratic { stiffness } => match order {
                1 => 2.0 * stiffness * x,
                2 => 2.0 * stiffness,
                _ => 0.0,
            },
            PotentialSpec::Quartic { coefficient } => match order {
                1 => 4.0 * coefficient * x.powi(3),
                2 => 12.0 * coefficient * x * x,
                3 => 24.0 * coefficient * x,
                4 => 24.0 * coefficient,
                _ => 0.0,
            },
            PotentialSpec::DeltaBarrier { .. } => {
                return Err(Error::Derivative {
                    kind: "delta-barrier",
                    order,
                })
            }
            PotentialSpec::Tabulated { .. } => {
                return Err(Error::Derivative {
                    kind: "tabulated",
                    order,
                })
            }
        })
    }
}

fn interpolate(grid: &Grid1D, values: &[f64], x: f64) -> f64 {
    if x <= grid.lower() {
        return values[0];
    }
    if x >= grid.upper() {
        return values[values.len() - 1];
    }
    let s = (x - grid.lower()) / grid.spacing();
    let i = (s.floor() as usize).min(values.len() - 2);
    let w = s - i as f64;
    values[i] * (1.0 - w) + values[i + 1] * w
}
