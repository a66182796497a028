use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Default ridge `1e-8 · trace(G) / dim(G)`.
pub fn default_ridge(g: &DMatrix<f64>) -> f64 {
    if g.nrows() == 0 {
        return 0.0;
    }
    1e-8 * g.trace() / g.nrows() as f64
}

/// Solves `(G + ridge·I) c = b` for symmetric `G` by Cholesky factorisation.
///
/// With `ridge == 0` a numerically singular `G` (pivot ratio below 1e-13) is
/// rejected and the error carries the number of near-null eigen-directions.
pub fn solve_regularized_symmetric(g: &DMatrix<f64>, b: &DVector<f64>, ridge: f64) -> Result<DVector<f64>> {
    let n = g.nrows();
    if g.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            got: g.ncols(),
        });
    }
    if b.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: b.len(),
        });
    }
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(Error::invalid("ridge", "must be finite and nonnegative"));
    }
    let scale = g.amax();
    let mut max_asym: f64 = 0.0;
    for i in 0..n {
        for j in 0..i {
            max_asym = max_asym.max((g[(i, j)] - g[(j, i)]).abs());
        }
    }
    if max_asym > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric {
            max_asymmetry: max_asym,
        });
    }
    if n == 0 {
        return Ok(DVector::zeros(0));
    }

    let mut a = g.clone();
    for i in 0..n {
        a[(i, i)] += ridge;
    }
    let near_null = |a: &DMatrix<f64>| {
        let eig = a.clone().symmetric_eigenvalues();
        let top = eig.amax();
        eig.iter().filter(|&&l| l <= 1e-12 * top).count().max(1)
    };
    match a.clone().cholesky() {
        Some(chol) => {
            if ridge == 0.0 {
                let l = chol.l_dirty();
                let piv: Vec<f64> = (0..n).map(|i| l[(i, i)] * l[(i, i)]).collect();
                let hi = piv.iter().cloned().fold(0.0, f64::max);
                let lo = piv.iter().cloned().fold(f64::INFINITY, f64::min);
                if !(lo > 1e-13 * hi) {
                    return Err(Error::Singular {
                        near_null: near_null(&a),
                    });
                }
            }
            Ok(chol.solve(b))
        }
        None => Err(Error::Singular {
            near_null: near_null(&a),
        }),
    }
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn symmetric_min_eigenvalue(g: &DMatrix<f64>) -> f64 {
    g.clone().symmetric_eigenvalues().min()
}
