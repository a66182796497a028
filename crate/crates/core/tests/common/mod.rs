#![allow(dead_code)]

use num_complex::Complex64;
use qmtraj_core::basis::BasisSet;
use qmtraj_core::synth::{ElementKind, RealElement};

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `Pₙ`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// Composite rule over `breaks`, panels no wider than `width`.
pub fn composite(breaks: &[f64], width: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(n);
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let panels = ((b - a) / width).ceil() as usize;
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for (x, wt) in gx.iter().zip(&gw) {
                xs.push(lo + 0.5 * h * (x + 1.0));
                ws.push(0.5 * h * wt);
            }
        }
    }
    (xs, ws)
}

/// `(ρ, ℘, ε)` of `φ_ij = f_i f_j e^{i(ω_j − ω_i)t}` in normalized units.
pub fn pair(basis: &BasisSet, i: usize, j: usize, x: f64, t: f64) -> [Complex64; 3] {
    let (mi, mj) = (basis.mode(i).unwrap(), basis.mode(j).unwrap());
    let (fi, fj) = (mi.value(x).unwrap(), mj.value(x).unwrap());
    let (di, dj) = (mi.derivative(x).unwrap(), mj.derivative(x).unwrap());
    let e = Complex64::from_polar(1.0, (mj.frequency - mi.frequency) * t);
    let k2 = mi.wavenumber.powi(2) + mj.wavenumber.powi(2);
    [
        e * fi * fj,
        e * Complex64::new(0.0, -0.5 * (di * fj - fi * dj)),
        e * (0.25 * k2 * fi * fj),
    ]
}

/// Densities of one real element, built from the complex pair densities.
pub fn element(basis: &BasisSet, el: RealElement, x: f64, t: f64) -> [f64; 3] {
    let a = pair(basis, el.i, el.j, x, t);
    let b = pair(basis, el.j, el.i, x, t);
    std::array::from_fn(|c| match el.kind {
        ElementKind::Diagonal => a[c].re,
        ElementKind::Plus => (a[c] + b[c]).re,
        ElementKind::Minus => (Complex64::i() * (a[c] - b[c])).re,
    })
}
