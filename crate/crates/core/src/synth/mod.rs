//! Space-time least-squares synthesis on the span of basis pairs.

mod gram;
mod pairs;
mod project;
mod scalar;
mod spec;
mod stats;

pub use gram::assemble_gram;
pub use pairs::{
    pair_densities, real_layout, CoefficientMatrix, ElementKind, PairDensity, RealElement, SpaceTimeDensities, SpectralField, ZeroTarget,
};
pub use project::{project_target, project_with_gram, reconstruct, right_hand_side, ProjectionResult, ProjectionSummary};
pub use scalar::{scalar_product, SpaceTimeRule};
pub use spec::{Mask, ScalarProductSpec, DEFAULT_RIDGE, DESK_RIDGE};
pub use stats::{packet_series, packet_stats, PacketMoment, PacketStats};
