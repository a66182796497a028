use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mollifier::Mollifier;
use crate::error::{Error, Result};
use crate::numerics::{segment_nodes, Grid1D};
use crate::units::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    Reflected,
    /// Free packet plus the localized counterterms.
    Transmitted,
    /// Free packet crossing the barrier with no counterterms.
    NaiveTransmitted,
    Free,
}

/// Mollified classical trajectory hitting the barrier at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetTrajectory {
    pub kind: TargetKind,
    pub speed: f64,
    pub mollifier: Mollifier,
    /// `(g₁, g₂)`; used by the transmitted kind only.
    pub counterterms: Option<(Mollifier, Mollifier)>,
    pub constants: Constants,
}

/// `ρ, ℘, ε` on `times × x_S` (row per time).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTriple {
    pub xs: Grid1D,
    pub times: Vec<f64>,
    pub rho: Array2<f64>,
    pub momentum: Array2<f64>,
    pub energy: Array2<f64>,
}

impl DensityTriple {
    pub fn zeros(xs: Grid1D, times: Vec<f64>) -> Self {
        let shape = (times.len(), xs.len());
        Self {
            xs,
            times,
            rho: Array2::zeros(shape),
            momentum: Array2::zeros(shape),
            energy: Array2::zeros(shape),
        }
    }

    fn integral(&self, a: &Array2<f64>, ti: usize) -> f64 {
        self.xs.trapezoid(a.row(ti).as_slice().expect("standard layout"))
    }

    pub fn mass(&self, ti: usize) -> f64 {
        self.integral(&self.rho, ti)
    }

    pub fn total_momentum(&self, ti: usize) -> f64 {
        self.integral(&self.momentum, ti)
    }

    pub fn total_energy(&self, ti: usize) -> f64 {
        self.integral(&self.energy, ti)
    }
}

/// `φ⁽⁰⁾ … φ⁽³⁾` on `times × x_S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy {
    pub xs: Grid1D,
    pub times: Vec<f64>,
    pub phi: [Array2<Complex64>; 4],
}

impl TargetTrajectory {
    fn build(kind: TargetKind, speed: f64, mollifier: Mollifier, counterterms: Option<(Mollifier, Mollifier)>, constants: Constants) -> Result<Self> {
        if !(speed > 0.0 && speed.is_finite()) {
            return Err(Error::invalid("speed", "must be positive"));
        }
        if !constants.is_valid() {
            return Err(Error::invalid("constants", "mass, ħ and V₀ must be positive"));
        }
        Ok(Self {
            kind,
            speed,
            mollifier,
            counterterms,
            constants,
        })
    }

    pub fn reflected(speed: f64, mollifier: Mollifier, constants: Constants) -> Result<Self> {
        Self::build(TargetKind::Reflected, speed, mollifier, None, constants)
    }

    /// Counterterm mollifiers default to `f` itself.
    pub fn transmitted(speed: f64, mollifier: Mollifier, counterterms: Option<(Mollifier, Mollifier)>, constants: Constants) -> Result<Self> {
        let g = counterterms.unwrap_or((mollifier, mollifier));
        Self::build(TargetKind::Transmitted, speed, mollifier, Some(g), constants)
    }

    pub fn naive_transmitted(speed: f64, mollifier: Mollifier, constants: Constants) -> Result<Self> {
        Self::build(TargetKind::NaiveTransmitted, speed, mollifier, None, constants)
    }

    pub fn free(speed: f64, mollifier: Mollifier, constants: Constants) -> Result<Self> {
        Self::build(TargetKind::Free, speed, mollifier, None, constants)
    }

    /// `ħ⁻¹ m v`.
    fn wavenumber(&self) -> f64 {
        self.constants.mass * self.speed / self.constants.hbar
    }

    /// Half-length of the time window in which barrier terms are active.
    pub fn interaction_window(&self) -> f64 {
        match self.kind {
            TargetKind::Transmitted | TargetKind::NaiveTransmitted => self.mollifier.support() / self.speed,
            _ => 0.0,
        }
    }

    /// Largest `|x_S|` reached by the target for `|t| ≤ t_max`.
    pub fn extent(&self, t_max: f64) -> f64 {
        let f = self.mollifier.support();
        let packet = self.speed * t_max + f;
        match (self.kind, self.counterterms) {
            (TargetKind::Transmitted, Some((g1, g2))) => packet.max(g1.support()).max(g2.support()),
            (TargetKind::NaiveTransmitted, _) => f64::INFINITY,
            _ => packet,
        }
    }

    /// `φ⁽ⁿ⁾(x, t)` for `n ≤ 3`.
    pub fn phi(&self, n: usize, x: f64, t: f64) -> Complex64 {
        let f = &self.mollifier;
        let vt = self.speed * t;
        let q = Complex64::new(0.0, self.wavenumber());
        let free = |u: f64, sign: f64| (q * sign).powu(n as u32) * f.value(x - u);
        match self.kind {
            TargetKind::Free => free(vt, 1.0),
            TargetKind::Reflected => {
                let (a, b) = heaviside_pair(t);
                free(vt, 1.0) * a + free(-vt, -1.0) * b
            }
            TargetKind::Transmitted => {
                let (g1, g2) = self.counterterms.expect("transmitted target carries counterterms");
                let n1 = 1.0 / g1.eval_unchecked(0.0, 4);
                let n2 = 1.0 / g2.eval_unchecked(0.0, 4);
                let g1d = |d| g1.eval_unchecked(x, d) * n1;
                let g2d = |d| g2.eval_unchecked(x, d) * n2;
                let ft = |d| f.eval_unchecked(vt, d);
                let packet = f.value(x - vt);
                let body = match n {
                    0 => packet - g1d(4) * ft(0) + g2d(3) * ft(1),
                    1 => packet + g1d(3) * ft(1) - g2d(2) * ft(2),
                    2 => packet - g1d(2) * ft(2) + g2d(1) * ft(3),
                    _ => -packet - g1d(1) * ft(3) + g2d(0) * ft(4),
                };
                if n == 3 {
                    -q.powu(3) * body + self.barrier_phi3_term(x, t)
                } else {
                    q.powu(n as u32) * body
                }
            }
            TargetKind::NaiveTransmitted => {
                let packet = free(vt, 1.0);
                let c = self.constants;
                let kappa = c.mass * c.barrier / (c.hbar * c.hbar);
                let step = if x > 0.0 {
                    1.0
                } else if x == 0.0 {
                    0.5
                } else {
                    0.0
                };
                let dx = f.value(x);
                let ft = |d| f.eval_unchecked(vt, d);
                match n {
                    0 | 1 => packet,
                    2 => packet + kappa * (ft(0) * dx + ft(1) * step),
                    _ => {
                        packet
                            + q * kappa * (2.0 * ft(0) * dx + ft(1) * step - ft(2) * x * step)
                    }
                }
            }
        }
    }

    /// `2 (m/ħ²) V₀ φ⁽¹⁾(0, t) δ(x)`, with the delta mollified by `f`.
    fn barrier_phi3_term(&self, x: f64, t: f64) -> Complex64 {
        let c = self.constants;
        let kappa = c.mass * c.barrier / (c.hbar * c.hbar);
        2.0 * kappa * self.phi(1, 0.0, t) * self.mollifier.value(x)
    }

    /// `(ρ, ℘, ε)` at a point.
    pub fn densities(&self, x: f64, t: f64) -> (f64, f64, f64) {
        let Constants { mass, hbar, .. } = self.constants;
        let rho = self.phi(0, x, t).re;
        let momentum = (Complex64::new(0.0, -hbar) * self.phi(1, x, t)).re;
        let energy = match self.kind {
            TargetKind::Reflected => 0.5 * mass * self.speed * self.speed * rho,
            TargetKind::Free => -hbar * hbar / (2.0 * mass) * self.phi(2, x, t).re,
            // V₀ δ(x) φ⁽⁰⁾(0, t), mollified in x.
            _ => {
                -hbar * hbar / (2.0 * mass) * self.phi(2, x, t).re
                    + self.constants.barrier * self.mollifier.value(x) * self.phi(0, 0.0, t).re
            }
        };
        (rho, momentum, energy)
    }

    /// `(∫ρ, ∫℘, ∫ε)` over `[−L, L]` at time `t` by composite Gauss–Legendre
    /// quadrature with breakpoints at every support edge, so that the
    /// piecewise-smooth integrands are integrated to rounding accuracy.
    pub fn totals(&self, t: f64, half_width: f64) -> Result<(f64, f64, f64)> {
        if !(half_width > 0.0) {
            return Err(Error::invalid("half_width", "must be positive"));
        }
        let vt = self.speed * t;
        let s = self.mollifier.support();
        let mut breaks = vec![-half_width, half_width, 0.0, s, -s, vt - s, vt + s, -vt - s, -vt + s];
        let mut narrowest = self.mollifier.width;
        if let Some((g1, g2)) = self.counterterms {
            breaks.extend([g1.support(), -g1.support(), g2.support(), -g2.support()]);
            narrowest = narrowest.min(g1.width).min(g2.width);
        }
        breaks.retain(|b| b.abs() <= half_width);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let (xs, ws) = segment_nodes(&breaks, narrowest / 8.0, 16);
        let mut out = (0.0, 0.0, 0.0);
        for (x, w) in xs.into_iter().zip(ws) {
            let (r, p, e) = self.densities(x, t);
            out.0 += w * r;
            out.1 += w * p;
            out.2 += w * e;
        }
        Ok(out)
    }

    fn check_grid(&self, xs: &Grid1D, times: &[f64]) -> Result<()> {
        let t_max = times.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        if self.kind != TargetKind::NaiveTransmitted {
            let reach = self.extent(t_max);
            if reach > xs.upper() || -reach < xs.lower() {
                let x = if reach > xs.upper() { reach } else { -reach };
                return Err(Error::Domain {
                    x,
                    lower: xs.lower(),
                    upper: xs.upper(),
                });
            }
        }
        let h = xs.spacing();
        let mut widths = vec![self.mollifier];
        if let Some((g1, g2)) = self.counterterms {
            widths.push(g1);
            widths.push(g2);
        }
        for m in widths {
            if m.support() < 8.0 * h {
                return Err(Error::Resolution {
                    what: format!("mollifier of width {} with grid spacing {h}", m.width),
                });
            }
        }
        Ok(())
    }

    /// Densities on a grid; the packet must stay inside the grid.
    pub fn sample(&self, xs: &Grid1D, times: &[f64]) -> Result<DensityTriple> {
        self.check_grid(xs, times)?;
        let pts = xs.points();
        let rows: Vec<Vec<(f64, f64, f64)>> = times
            .par_iter()
            .map(|&t| pts.iter().map(|&x| self.densities(x, t)).collect())
            .collect();
        let mut out = DensityTriple::zeros(*xs, times.to_vec());
        for (ti, row) in rows.into_iter().enumerate() {
            for (xi, (r, p, e)) in row.into_iter().enumerate() {
                out.rho[(ti, xi)] = r;
                out.momentum[(ti, xi)] = p;
                out.energy[(ti, xi)] = e;
            }
        }
        Ok(out)
    }

    /// Hierarchy components on a grid.
    pub fn hierarchy(&self, xs: &Grid1D, times: &[f64]) -> Result<Hierarchy> {
        self.check_grid(xs, times)?;
        let pts = xs.points();
        let shape = (times.len(), xs.len());
        let phi = std::array::from_fn(|n| {
            let rows: Vec<Vec<Complex64>> = times
                .par_iter()
                .map(|&t| pts.iter().map(|&x| self.phi(n, x, t)).collect())
                .collect();
            Array2::from_shape_vec(shape, rows.into_iter().flatten().collect()).expect("shape")
        });
        Ok(Hierarchy {
            xs: *xs,
            times: times.to_vec(),
            phi,
        })
    }
}

/// `(θ(−t), θ(t))` with `θ(0) = ½`.
fn heaviside_pair(t: f64) -> (f64, f64) {
    if t < 0.0 {
        (1.0, 0.0)
    } else if t > 0.0 {
        (0.0, 1.0)
    } else {
        (0.5, 0.5)
    }
}

pub fn reflected_target(tt: &TargetTrajectory, xs: &Grid1D, times: &[f64]) -> Result<DensityTriple> {
    expect_kind(tt, TargetKind::Reflected)?;
    tt.sample(xs, times)
}

pub fn transmitted_target(tt: &TargetTrajectory, xs: &Grid1D, times: &[f64]) -> Result<(DensityTriple, Hierarchy)> {
    expect_kind(tt, TargetKind::Transmitted)?;
    Ok((tt.sample(xs, times)?, tt.hierarchy(xs, times)?))
}

pub fn naive_transmitted_target(speed: f64, mollifier: Mollifier, constants: Constants, xs: &Grid1D, times: &[f64]) -> Result<(DensityTriple, Hierarchy)> {
    let tt = TargetTrajectory::naive_transmitted(speed, mollifier, constants)?;
    Ok((tt.sample(xs, times)?, tt.hierarchy(xs, times)?))
}

fn expect_kind(tt: &TargetTrajectory, kind: TargetKind) -> Result<()> {
    if tt.kind != kind {
        return Err(Error::invalid("kind", format!("expected {kind:?}, got {:?}", tt.kind)));
    }
    Ok(())
}
