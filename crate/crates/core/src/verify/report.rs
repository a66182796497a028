use serde::{Deserialize, Serialize};

/// Pass/fail thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative mass drift.
    pub unitarity: f64,
    /// Edge sup relative to the component peak.
    pub boundary: f64,
    /// Normalized finite-difference residual of each hierarchy relation.
    pub hierarchy: f64,
    /// Localization flag: `σ_x(±T/2)` above this multiple of the mollifier width.
    pub localization_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unitarity: 0.05,
            boundary: 1e-6,
            hierarchy: 1e-3,
            localization_factor: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitarityReport {
    /// `max |∫ρ(t) − ∫ρ(t₀)|`.
    pub drift: f64,
    pub relative_drift: f64,
    pub reference_mass: f64,
    pub pass: bool,
}

/// Edge sups over the outer 10% of the domain, each divided by the peak of
/// the same quantity over the whole domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub phi1: f64,
    pub x_phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub threshold: f64,
    /// `φ⁽¹⁾ → 0`.
    pub unitarity_pass: bool,
    /// `x_S φ⁽¹⁾ → 0` and `φ⁽²⁾ → 0`.
    pub ehrenfest_pass: bool,
    /// `φ⁽³⁾ → 0`.
    pub energy_pass: bool,
}

impl BoundaryReport {
    pub fn pass(&self) -> bool {
        self.unitarity_pass && self.ehrenfest_pass && self.energy_pass
    }
}

/// Normalized residuals of the three transport relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HierarchyReport {
    /// `∂ₓφ⁽ⁿ⁾ = −i(m/ħ)∂ₜφ⁽ⁿ⁻¹⁾ + c (m/ħ²)V′φ⁽ⁿ⁻²⁾` for `n = 1, 2, 3`.
    pub relations: [f64; 3],
    /// Jump conditions across the barrier band; zero without a barrier.
    pub jumps: [f64; 3],
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub reference_sigma: f64,
    pub sigma_before: f64,
    pub sigma_after: f64,
    pub localized: bool,
}

/// Aggregate of the individual checks that were run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicsReport {
    pub tolerances: Tolerances,
    pub unitarity: Option<UnitarityReport>,
    pub boundary: Option<BoundaryReport>,
    pub hierarchy: Option<HierarchyReport>,
    pub localization: Option<LocalizationReport>,
}

impl PhysicsReport {
    pub fn new(tolerances: Tolerances) -> Self {
        Self {
            tolerances,
            unitarity: None,
            boundary: None,
            hierarchy: None,
            localization: None,
        }
    }

    /// All checks that were run pass. Localization is advisory and not included.
    pub fn passed(&self) -> bool {
        self.unitarity.is_none_or(|u| u.pass) && self.boundary.is_none_or(|b| b.pass()) && self.hierarchy.is_none_or(|h| h.pass)
    }
}
