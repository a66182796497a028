use crate::error::{Error, Result};

/// Bisection on a sign-changing bracket. Returns the midpoint of the final
/// bracket once its width is ≤ `tol` (or no further halving is representable);
/// an exact zero at either end is returned as is.
pub fn find_root_bracketed<G>(g: G, (lower, upper): (f64, f64), tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lower <= upper {
        (lower, upper)
    } else {
        (upper, lower)
    };
    let mut ga = g(a);
    let gb = g(b);
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
        return Err(Error::Bracket {
            lower: a,
            upper: b,
            g_lower: ga,
            g_upper: gb,
        });
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
