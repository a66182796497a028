use serde::{Deserialize, Serialize};

/// Physical constants of a run. Normalized units (`m = ħ = V₀ = 1`) are the
/// default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub mass: f64,
    pub hbar: f64,
    /// Delta-barrier strength `V₀`.
    pub barrier: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self::NORMALIZED
    }
}

impl Constants {
    pub const NORMALIZED: Constants = Constants {
        mass: 1.0,
        hbar: 1.0,
        barrier: 1.0,
    };

    /// `m V₀ / ħ²`, the inverse length set by the barrier.
    pub fn barrier_wavenumber(&self) -> f64 {
        self.mass * self.barrier / (self.hbar * self.hbar)
    }

    /// Natural frequency `ħk²/2m` of a mode with wavenumber `k`.
    pub fn frequency(&self, k: f64) -> f64 {
        self.hbar * k * k / (2.0 * self.mass)
    }

    /// Energy `ħ²k²/2m`.
    pub fn energy(&self, k: f64) -> f64 {
        self.hbar * self.frequency(k)
    }

    pub fn is_valid(&self) -> bool {
        [self.mass, self.hbar, self.barrier]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
    }
}
