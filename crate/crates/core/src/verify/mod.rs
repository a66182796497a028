//! Checks of the conservation laws and the transport hierarchy.

mod boundary;
mod hierarchy;
mod localization;
mod quantization;
mod report;
mod unitarity;

pub use boundary::check_boundary_decay;
pub use hierarchy::{check_hierarchy, HierarchyOptions};
pub use localization::{check_localization, mollifier_sigma};
pub use quantization::{quantization_check, QuantizationResult};
pub use report::{BoundaryReport, HierarchyReport, LocalizationReport, PhysicsReport, Tolerances, UnitarityReport};
pub use unitarity::{check_mass_series, check_unitarity};
