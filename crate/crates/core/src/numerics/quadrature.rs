use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
///
/// Newton iteration on `P_n` from the Chebyshev initial guess; accurate to
/// rounding for the orders used here (n ≤ 64).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule: `panels` equal panels with
/// `nodes_per_panel` nodes each.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    panels: usize,
    nodes_per_panel: usize,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if panels == 0 {
            return Err(Error::invalid("panels", "must be positive"));
        }
        if nodes_per_panel == 0 || nodes_per_panel > 64 {
            return Err(Error::invalid("nodes_per_panel", "must be in 1..=64"));
        }
        let (ref_nodes, ref_weights) = gauss_legendre(nodes_per_panel);
        Ok(Self {
            panels,
            nodes_per_panel,
            ref_nodes,
            ref_weights,
        })
    }

    /// Rule resolving an integrand whose shortest wavelength is
    /// `2π / max_wavenumber` with at least six nodes per wavelength.
    pub fn for_oscillation(length: f64, max_wavenumber: f64, nodes_per_panel: usize) -> Result<Self> {
        let wavelength = 2.0 * std::f64::consts::PI / max_wavenumber.max(1e-12);
        let nodes_needed = 6.0 * length / wavelength;
        let panels = (nodes_needed / nodes_per_panel as f64).ceil().max(1.0) as usize;
        Self::new(panels, nodes_per_panel)
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    /// Absolute nodes and weights on `[a, b]`.
    pub fn nodes_weights(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let h = (b - a) / self.panels as f64;
        let mut xs = Vec::with_capacity(self.panels * self.nodes_per_panel);
        let mut ws = Vec::with_capacity(xs.capacity());
        for p in 0..self.panels {
            let lo = a + p as f64 * h;
            let mid = lo + 0.5 * h;
            for (u, w) in self.ref_nodes.iter().zip(&self.ref_weights) {
                xs.push(mid + 0.5 * h * u);
                ws.push(0.5 * h * w);
            }
        }
        (xs, ws)
    }
}

/// Panel-composite Gauss approximation of `∫_a^b f`.
pub fn integrate<F>(f: F, (a, b): (f64, f64), rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (xs, ws) = rule.nodes_weights(a, b);
    let mut sum = 0.0;
    for (x, w) in xs.into_iter().zip(ws) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: x });
        }
        sum += w * v;
    }
    Ok(sum)
}

pub fn integrate_complex<F>(f: F, (a, b): (f64, f64), rule: &QuadratureRule) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let (xs, ws) = rule.nodes_weights(a, b);
    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in xs.into_iter().zip(ws) {
        let v = f(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteIntegrand { at: x });
        }
        sum += v * w;
    }
    Ok(sum)
}

/// Nodes and weights over consecutive segments between sorted `breaks`, each
/// split into equal panels no wider than `max_panel_width`. Breakpoints are
/// panel edges, so kinks and jumps placed there are integrated exactly.
pub fn segment_nodes(breaks: &[f64], max_panel_width: f64, nodes_per_panel: usize) -> (Vec<f64>, Vec<f64>) {
    let (rx, rw) = gauss_legendre(nodes_per_panel);
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for seg in breaks.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        if b <= a {
            continue;
        }
        let panels = ((b - a) / max_panel_width).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            for (u, w) in rx.iter().zip(&rw) {
                xs.push(mid + 0.5 * h * u);
                ws.push(0.5 * h * w);
            }
        }
    }
    (xs, ws)
}

/// `∫ f` over the union of segments between `breaks`.
pub fn integrate_segments<F>(f: F, breaks: &[f64], max_panel_width: f64, nodes_per_panel: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (xs, ws) = segment_nodes(breaks, max_panel_width, nodes_per_panel);
    let mut sum = 0.0;
    for (x, w) in xs.into_iter().zip(ws) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: x });
        }
        sum += w * v;
    }
    Ok(sum)
}
