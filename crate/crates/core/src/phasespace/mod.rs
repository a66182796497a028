//! Quantum-matrix fields in `(x_S, x_D)` coordinates, the Moyal–Wigner
//! transform, phase-space observables and evolution generators.

mod field;
mod generators;
mod observables;
mod potential;
mod reference;
mod wigner;

pub use field::{pure_to_matrix, QuantumMatrixField, WignerField, WignerRate};
pub use generators::{apply_classical_generator, apply_quantum_generator, moyal_correction};
pub use observables::{
    central_slices, energy_spread, integrate_phase_space, observables, phase_space_expectation, phase_space_moment,
    AdditiveObservable, CentralSlices, LocalizedState, Observables,
};
pub use potential::PotentialSpec;
pub use reference::{classical_orbit, gaussian_width, PhaseSpaceDelta, ReferenceField, ReferenceKind};
pub use wigner::{conjugate_momentum_grid, inverse_moyal_wigner, moyal_wigner};
