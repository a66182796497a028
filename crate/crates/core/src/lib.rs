//! Density-matrix ("quantum matrix") toolkit for one-dimensional scattering.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: grids, composite Gauss–Legendre quadrature, bisection and
//!   a ridge-regularised symmetric solver.
//! * [`basis`]: the finite delta-barrier eigenbasis on `[-L, L]` and the
//!   continuum scattering amplitudes.
//! * [`phasespace`]: quantum-matrix fields, the Moyal–Wigner transform,
//!   observables, quantum/classical generators and closed-form references.
//! * [`targets`]: mollified reflected/transmitted trajectories, stationary
//!   pure-state densities and their statistical mixture.
//! * [`synth`]: the space-time least-squares projection of a target onto the
//!   span of basis pairs and the reconstruction of its densities.
//! * [`verify`]: unitarity, Ehrenfest, energy and hierarchy checks plus the
//!   closed-orbit quantization test.
//! * [`multiparticle`]: two-particle separability and decoupled continuity.
//!
//! Units default to `m = ħ = V₀ = 1`; see [`Constants`].

pub mod basis;
pub mod error;
pub mod multiparticle;
pub mod numerics;
pub mod phasespace;
pub mod synth;
pub mod targets;
pub mod units;
pub mod verify;

pub use basis::{BasisSet, ModeSolution, Parity};
pub use error::{Error, Result};
pub use numerics::{Grid1D, QuadratureRule};
pub use phasespace::{PotentialSpec, QuantumMatrixField, WignerField};
pub use synth::{CoefficientMatrix, PacketStats, ScalarProductSpec};
pub use targets::{DensityTriple, Mollifier, MollifierKind, TargetKind, TargetTrajectory};
pub use units::Constants;
pub use verify::PhysicsReport;
