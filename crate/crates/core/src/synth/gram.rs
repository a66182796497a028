//! Closed-form Gram matrix of the real pair elements.
//!
//! Every element density factorizes as `c · S(x) · T(t)` with `S` a product of
//! two mode pieces and `T` a cosine or sine of `Ωt`. The scalar product over
//! the full rectangle minus the mask rectangle is then
//! `∫S_a S_b dx ∫T_a T_b dt` over the full ranges minus the same over the mask
//! ranges.

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::pairs::{energy_factor, real_layout, ElementKind, RealElement};
use super::spec::ScalarProductSpec;
use crate::basis::{BasisSet, ModeSolution, TrigPiece};
use crate::error::Result;

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `∫_{−T}^{T} cos(wt) dt`.
fn cos_integral(w: f64, half: f64) -> f64 {
    2.0 * half * sinc(w * half)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum TimeShape {
    Cos(f64),
    Sin(f64),
}

impl TimeShape {
    pub(crate) fn eval(self, t: f64) -> f64 {
        match self {
            TimeShape::Cos(w) => (w * t).cos(),
            TimeShape::Sin(w) => (w * t).sin(),
        }
    }
}

/// `∫_{−T}^{T} a(t) b(t) dt`.
pub(crate) fn time_overlap(a: TimeShape, b: TimeShape, half: f64) -> f64 {
    match (a, b) {
        (TimeShape::Cos(x), TimeShape::Cos(y)) => 0.5 * (cos_integral(x - y, half) + cos_integral(x + y, half)),
        (TimeShape::Sin(x), TimeShape::Sin(y)) => 0.5 * (cos_integral(x - y, half) - cos_integral(x + y, half)),
        _ => 0.0,
    }
}

/// Coefficients and time shapes of one real element in the three channels.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ElementForm {
    /// Index into the pair list.
    pub pair: usize,
    pub rho: f64,
    pub momentum: f64,
    pub energy: f64,
    /// Shared by `ρ` and `ε`.
    pub density_time: TimeShape,
    pub momentum_time: TimeShape,
}

/// Pairs `(i, j)`, `i ≤ j`, in layout order, and the element forms.
pub(crate) fn element_forms(basis: &BasisSet) -> (Vec<(usize, usize)>, Vec<ElementForm>) {
    let modes = basis.modes();
    let c = basis.constants();
    let layout = real_layout(modes.len());
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut forms = Vec::with_capacity(layout.len());
    for RealElement { i, j, kind } in layout {
        if pairs.last() != Some(&(i, j)) {
            pairs.push((i, j));
        }
        let pair = pairs.len() - 1;
        let omega = modes[j].frequency - modes[i].frequency;
        let k = energy_factor(c.hbar, c.mass, modes[i].wavenumber, modes[j].wavenumber);
        let form = match kind {
            ElementKind::Diagonal => ElementForm {
                pair,
                rho: 1.0,
                momentum: 0.0,
                energy: k,
                density_time: TimeShape::Cos(0.0),
                momentum_time: TimeShape::Cos(0.0),
            },
            ElementKind::Plus => ElementForm {
                pair,
                rho: 2.0,
                momentum: c.hbar,
                energy: 2.0 * k,
                density_time: TimeShape::Cos(omega),
                momentum_time: TimeShape::Sin(omega),
            },
            ElementKind::Minus => ElementForm {
                pair,
                rho: -2.0,
                momentum: c.hbar,
                energy: -2.0 * k,
                density_time: TimeShape::Sin(omega),
                momentum_time: TimeShape::Cos(omega),
            },
        };
        forms.push(form);
    }
    (pairs, forms)
}

/// `∫_a^b Π A_n cos(k_n x − θ_n) dx` for four pieces.
fn quad_product(p: [TrigPiece; 4], a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let amp = p[0].amp * p[1].amp * p[2].amp * p[3].amp;
    if amp == 0.0 {
        return 0.0;
    }
    let mid = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = 0.0;
    for s in 0..8u8 {
        let sg = |bit: u8| if s & bit == 0 { 1.0 } else { -1.0 };
        let (s1, s2, s3) = (sg(1), sg(2), sg(4));
        let k = p[0].k + s1 * p[1].k + s2 * p[2].k + s3 * p[3].k;
        let th = p[0].theta + s1 * p[1].theta + s2 * p[2].theta + s3 * p[3].theta;
        sum += (k * mid - th).cos() * sinc(k * h);
    }
    amp * (b - a) * sum / 8.0
}

/// `(∫ f_i f_j f_k f_l, ∫ W_ij W_kl)` over `[−x, 0] ∪ [0, x]`.
fn space_overlaps(m: [&ModeSolution; 4], x: f64) -> (f64, f64) {
    let mut ff = 0.0;
    let mut ww = 0.0;
    for positive in [false, true] {
        let (a, b) = if positive { (0.0, x) } else { (-x, 0.0) };
        let v: [TrigPiece; 4] = std::array::from_fn(|n| m[n].piece(positive));
        let d: [TrigPiece; 4] = std::array::from_fn(|n| m[n].derivative_piece(positive));
        ff += quad_product(v, a, b);
        // (d0 v1 − v0 d1)(d2 v3 − v2 d3)
        ww += quad_product([d[0], v[1], d[2], v[3]], a, b) - quad_product([d[0], v[1], v[2], d[3]], a, b)
            - quad_product([v[0], d[1], d[2], v[3]], a, b)
            + quad_product([v[0], d[1], v[2], d[3]], a, b);
    }
    (ff, ww)
}

/// Gram matrix of the real elements of [`real_layout`] under `spec`.
///
/// The result is exactly symmetric; it is positive semidefinite up to
/// rounding.
pub fn assemble_gram(basis: &BasisSet, spec: &ScalarProductSpec) -> Result<DMatrix<f64>> {
    spec.validate(basis.half_width())?;
    let (pairs, forms) = element_forms(basis);
    let modes = basis.modes();
    let l = basis.half_width();
    let mask = spec.mask_or_empty();
    let t = spec.half_time;
    let d = forms.len();

    // Elements grouped by pair.
    let mut by_pair: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for (e, f) in forms.iter().enumerate() {
        by_pair[f.pair].push(e);
    }

    let columns: Vec<Vec<(usize, usize, f64)>> = (0..pairs.len())
        .into_par_iter()
        .map(|q| {
            let (k, l_idx) = pairs[q];
            let mut out = Vec::new();
            for p in 0..=q {
                let (i, j) = pairs[p];
                let m = [&modes[i], &modes[j], &modes[k], &modes[l_idx]];
                let (ff, ww) = space_overlaps(m, l);
                let (ff_r, ww_r) = if mask.space > 0.0 {
                    space_overlaps(m, mask.space)
                } else {
                    (0.0, 0.0)
                };
                for &a in &by_pair[p] {
                    for &b in &by_pair[q] {
                        if a > b {
                            continue;
                        }
                        let (fa, fb) = (&forms[a], &forms[b]);
                        let dens = spec.w0 * fa.rho * fb.rho + spec.w2 * fa.energy * fb.energy;
                        let mom = spec.w1 * fa.momentum * fb.momentum;
                        let mut g = 0.0;
                        if dens != 0.0 {
                            let tt = time_overlap(fa.density_time, fb.density_time, t);
                            let tr = time_overlap(fa.density_time, fb.density_time, mask.time);
                            g += dens * (ff * tt - ff_r * tr);
                        }
                        if mom != 0.0 {
                            let tt = time_overlap(fa.momentum_time, fb.momentum_time, t);
                            let tr = time_overlap(fa.momentum_time, fb.momentum_time, mask.time);
                            g += mom * (ww * tt - ww_r * tr);
                        }
                        out.push((a, b, g));
                    }
                }
            }
            out
        })
        .collect();

    let mut g = DMatrix::zeros(d, d);
    for (a, b, v) in columns.into_iter().flatten() {
        g[(a, b)] = v;
        g[(b, a)] = v;
    }
    Ok(g)
}
