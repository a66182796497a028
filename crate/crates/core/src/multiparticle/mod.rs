//! Two-particle separability and the decoupled continuity relations.

mod continuity;
mod field;
mod separability;

pub use continuity::{check_decoupled_continuity, ContinuityResidual};
pub use field::{SingleParticleSlices, TwoParticleField};
pub use separability::{factorize, separability_residual, two_particle_observables, Factors, SeparabilityResidual, TwoParticleObservables};
