//! Mollified target trajectories for reflected and transmitted particles,
//! stationary scattering densities and their ensemble counterpart.

mod mollifier;
mod stationary;
mod trajectory;

pub use mollifier::{Mollifier, MollifierKind};
pub use stationary::{
    mixture_density, stationary_pure_densities, Mixture, MixtureWeights, Side, SideDensities, StationaryState,
};
pub use trajectory::{
    naive_transmitted_target, reflected_target, transmitted_target, DensityTriple, Hierarchy, TargetKind,
    TargetTrajectory,
};
