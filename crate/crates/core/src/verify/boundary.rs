use ndarray::Array2;
use num_complex::Complex64;

use super::report::BoundaryReport;
use crate::targets::Hierarchy;

/// `(edge sup, overall peak)` of `|g(x) a(t, x)|`, the edge being the outer
/// 10% of the grid on both sides.
fn edge_ratio(a: &Array2<Complex64>, xs: &[f64], weight: impl Fn(f64) -> f64) -> f64 {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let cut = 0.1 * (hi - lo);
    let mut edge: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for row in a.rows() {
        for (v, &x) in row.iter().zip(xs) {
            let m = (weight(x) * v).norm();
            peak = peak.max(m);
            if x <= lo + cut || x >= hi - cut {
                edge = edge.max(m);
            }
        }
    }
    if peak > 0.0 {
        edge / peak
    } else {
        0.0
    }
}

/// Sups of `|φ⁽¹⁾|`, `|x_S φ⁽¹⁾|`, `|φ⁽²⁾|`, `|φ⁽³⁾|` over the outer 10% of
/// the domain, relative to their peaks, against `tolerance`.
pub fn check_boundary_decay(h: &Hierarchy, tolerance: f64) -> BoundaryReport {
    let xs = h.xs.points();
    let phi1 = edge_ratio(&h.phi[1], &xs, |_| 1.0);
    let x_phi1 = edge_ratio(&h.phi[1], &xs, |x| x);
    let phi2 = edge_ratio(&h.phi[2], &xs, |_| 1.0);
    let phi3 = edge_ratio(&h.phi[3], &xs, |_| 1.0);
    BoundaryReport {
        phi1,
        x_phi1,
        phi2,
        phi3,
        threshold: tolerance,
        unitarity_pass: phi1 <= tolerance,
        ehrenfest_pass: x_phi1 <= tolerance && phi2 <= tolerance,
        energy_pass: phi3 <= tolerance,
    }
}
