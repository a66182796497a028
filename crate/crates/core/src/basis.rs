//! Finite eigenbasis of the repulsive delta barrier on `[-L, L]`.
//!
//! Odd modes are `sin(kₙx)` with `kₙL = (n+1)π/2`; even modes are
//! `cos(kₙ|x| − φₙ)` with `tan φₙ = κ/kₙ`, `kₙL = φₙ + nπ/2`, where
//! `κ = mV₀/ħ²`. Both families satisfy `f(L) = f(−L)` and `f'(L) = f'(−L)`.
//! The modes are left unnormalized; a per-mode scale factor is available
//! through [`BasisSet::set_scale`].

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::find_root_bracketed;
use crate::units::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One eigenfunction `fₙ` of the delta barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSolution {
    pub index: usize,
    pub wavenumber: f64,
    /// `φₙ`; zero for odd modes.
    pub phase: f64,
    pub parity: Parity,
    /// `ωₙ = ħkₙ²/2m`.
    pub frequency: f64,
    pub half_width: f64,
    pub scale: f64,
}

/// `A cos(kx − θ)`: the form every mode and mode derivative takes on either
/// side of the barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TrigPiece {
    pub amp: f64,
    pub k: f64,
    pub theta: f64,
}

impl ModeSolution {
    fn check_domain(&self, x: f64) -> Result<()> {
        if x.abs() > self.half_width * (1.0 + 1e-12) || !x.is_finite() {
            return Err(Error::Domain {
                x,
                lower: -self.half_width,
                upper: self.half_width,
            });
        }
        Ok(())
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.value_unchecked(x))
    }

    pub(crate) fn value_unchecked(&self, x: f64) -> f64 {
        self.scale
            * match self.parity {
                Parity::Even => (self.wavenumber * x.abs() - self.phase).cos(),
                Parity::Odd => (self.wavenumber * x).sin(),
            }
    }

    /// First derivative. At the kink (`x = 0`, even modes) the symmetric mean
    /// of the one-sided limits is returned, which is zero; the jump itself is
    /// [`ModeSolution::kink_jump`].
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.derivative_unchecked(x))
    }

    pub(crate) fn derivative_unchecked(&self, x: f64) -> f64 {
        let k = self.wavenumber;
        self.scale
            * match self.parity {
                Parity::Even => {
                    if x == 0.0 {
                        0.0
                    } else {
                        -k * x.signum() * (k * x.abs() - self.phase).sin()
                    }
                }
                Parity::Odd => k * (k * x).cos(),
            }
    }

    /// `f'(0⁺) − f'(0⁻)`: `2kₙ sin φₙ` for even modes, zero for odd ones.
    pub fn kink_jump(&self) -> f64 {
        match self.parity {
            Parity::Even => 2.0 * self.scale * self.wavenumber * self.phase.sin(),
            Parity::Odd => 0.0,
        }
    }

    /// Regular part of the second derivative, `−kₙ² fₙ(x)`. The even modes
    /// additionally carry `kink_jump() · δ(x)`.
    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        Ok(-self.wavenumber * self.wavenumber * self.value(x)?)
    }

    /// Residual of the defining eigen-equations for this mode.
    pub fn eigen_residual(&self, constants: &Constants) -> f64 {
        let l = self.half_width;
        let n = self.index as f64;
        match self.parity {
            Parity::Odd => (self.wavenumber * l - (n + 1.0) * FRAC_PI_2).abs(),
            Parity::Even => {
                let kappa = constants.barrier_wavenumber();
                let tan_rel = (self.phase.tan() * self.wavenumber - kappa).abs() / kappa;
                let quant = (self.wavenumber * l - self.phase - n * FRAC_PI_2).abs();
                tan_rel.max(quant)
            }
        }
    }

    /// Value piece on the side `x > 0` (`positive = true`) or `x < 0`.
    pub(crate) fn piece(&self, positive: bool) -> TrigPiece {
        let theta = match (self.parity, positive) {
            (Parity::Even, true) => self.phase,
            (Parity::Even, false) => -self.phase,
            (Parity::Odd, _) => FRAC_PI_2,
        };
        TrigPiece {
            amp: self.scale,
            k: self.wavenumber,
            theta,
        }
    }

    /// Derivative piece on one side: `d/dx A cos(kx − θ) = Ak cos(kx − θ + π/2)`.
    pub(crate) fn derivative_piece(&self, positive: bool) -> TrigPiece {
        let p = self.piece(positive);
        TrigPiece {
            amp: p.amp * p.k,
            k: p.k,
            theta: p.theta - FRAC_PI_2,
        }
    }
}

/// Evaluates mode `n` at `x`; errors outside `[-L, L]`.
pub fn eval_mode(mode: &ModeSolution, x: f64) -> Result<f64> {
    mode.value(x)
}

/// Solves for mode `n` on `[-L, L]`.
pub fn solve_mode(n: usize, half_width: f64, constants: &Constants) -> Result<ModeSolution> {
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::invalid("half_width", "must be positive and finite"));
    }
    if !constants.is_valid() {
        return Err(Error::invalid("constants", "m, ħ and V₀ must be positive"));
    }
    let nf = n as f64;
    let parity = Parity::of(n);
    let (k, phase) = match parity {
        Parity::Odd => ((nf + 1.0) * FRAC_PI_2 / half_width, 0.0),
        Parity::Even => {
            // (φ + nπ/2) sin φ − κL cos φ changes sign once on (0, π/2) and
            // has no pole, unlike the tan form.
            let kl = constants.barrier_wavenumber() * half_width;
            let offset = nf * FRAC_PI_2;
            let g = |phi: f64| (phi + offset) * phi.sin() - kl * phi.cos();
            let phi = find_root_bracketed(g, (0.0, FRAC_PI_2), 1e-15).map_err(|e| Error::ModeSolve {
                index: n,
                lower: offset / half_width,
                upper: (offset + FRAC_PI_2) / half_width,
                source: Box::new(e),
            })?;
            ((phi + offset) / half_width, phi)
        }
    };
    Ok(ModeSolution {
        index: n,
        wavenumber: k,
        phase,
        parity,
        frequency: constants.frequency(k),
        half_width,
        scale: 1.0,
    })
}

/// The modes `0..=N` on `[-L, L]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSet {
    half_width: f64,
    modes: Vec<ModeSolution>,
    constants: Constants,
}

impl BasisSet {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn modes(&self) -> &[ModeSolution] {
        &self.modes
    }

    pub fn mode(&self, n: usize) -> Result<&ModeSolution> {
        self.modes.get(n).ok_or(Error::Index {
            index: n,
            max: self.modes.len() - 1,
        })
    }

    /// `N`, the highest mode index.
    pub fn max_index(&self) -> usize {
        self.modes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn max_wavenumber(&self) -> f64 {
        self.modes.last().map_or(0.0, |m| m.wavenumber)
    }

    /// Per-mode scale hook; modes default to the literal unit amplitude.
    pub fn set_scale(&mut self, n: usize, scale: f64) -> Result<()> {
        let max = self.max_index();
        let m = self.modes.get_mut(n).ok_or(Error::Index { index: n, max })?;
        m.scale = scale;
        Ok(())
    }

    /// Modes `0..=max_index` as a nested, smaller basis.
    pub fn truncated(&self, max_index: usize) -> Result<BasisSet> {
        if max_index > self.max_index() || max_index == 0 {
            return Err(Error::Index {
                index: max_index,
                max: self.max_index(),
            });
        }
        Ok(BasisSet {
            half_width: self.half_width,
            modes: self.modes[..=max_index].to_vec(),
            constants: self.constants,
        })
    }
}

/// Basis of modes `0..=N` in normalized units.
pub fn build_basis(max_index: usize, half_width: f64) -> Result<BasisSet> {
    build_basis_with(max_index, half_width, &Constants::NORMALIZED)
}

pub fn build_basis_with(max_index: usize, half_width: f64, constants: &Constants) -> Result<BasisSet> {
    if max_index < 1 {
        return Err(Error::invalid("modes", "N must be at least 1"));
    }
    let modes = (0..=max_index)
        .map(|n| solve_mode(n, half_width, constants))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = modes.windows(2).find(|w| w[1].wavenumber <= w[0].wavenumber) {
        return Err(Error::invalid(
            "modes",
            format!("wavenumbers not increasing at n = {}", w[1].index),
        ));
    }
    Ok(BasisSet {
        half_width,
        modes,
        constants: *constants,
    })
}

/// Reflected and transmitted amplitudes `(A_R, A_T)` for unit incident
/// amplitude at wavenumber `k`.
pub fn scattering_amplitudes(k: f64, constants: &Constants) -> Result<(Complex64, Complex64)> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::invalid("wavenumber", format!("{k} must be positive")));
    }
    let kappa = Complex64::new(constants.barrier_wavenumber(), 0.0);
    let ik = Complex64::new(0.0, k);
    let denom = ik - kappa;
    Ok((kappa / denom, ik / denom))
}

/// `|A_T|²` at wavenumber `k`.
pub fn transmission_probability(k: f64, constants: &Constants) -> Result<f64> {
    Ok(scattering_amplitudes(k, constants)?.1.norm_sqr())
}

/// Bracket of the `n`-th mode in `k L`: `(nπ/2, nπ/2 + π/2]`.
pub fn mode_bracket(n: usize) -> (f64, f64) {
    let lo = n as f64 * FRAC_PI_2;
    (lo, lo + FRAC_PI_2)
}
