//! Shared numerical services: uniform grids, composite Gauss–Legendre
//! quadrature, bracketed root finding and a ridge-regularised symmetric solve.

mod grid;
mod linsolve;
mod quadrature;
mod roots;

pub use grid::Grid1D;
pub use linsolve::{default_ridge, solve_regularized_symmetric, symmetric_min_eigenvalue};
pub use quadrature::{
    gauss_legendre, integrate, integrate_complex, integrate_segments, segment_nodes, QuadratureRule,
};
pub use roots::find_root_bracketed;

/// Fourth-order centered first derivative at index `i` of a uniformly sampled
/// sequence, falling back to second order next to the ends and one-sided
/// differences at the ends.
pub(crate) fn stencil_derivative<T>(values: &[T], i: usize, h: f64) -> T
where
    T: Copy
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>,
{
    let n = values.len();
    if i >= 2 && i + 2 < n {
        (values[i - 2] - values[i + 2] + (values[i + 1] - values[i - 1]) * 8.0) * (1.0 / (12.0 * h))
    } else if i >= 1 && i + 1 < n {
        (values[i + 1] - values[i - 1]) * (0.5 / h)
    } else if i == 0 {
        (values[1] - values[0]) * (1.0 / h)
    } else {
        (values[n - 1] - values[n - 2]) * (1.0 / h)
    }
}
