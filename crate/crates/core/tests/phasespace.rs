use std::f64::consts::PI;

use num_complex::Complex64;
use qmtraj_core::basis::build_basis;
use qmtraj_core::phasespace::*;
use qmtraj_core::{Constants, Error, Grid1D};

#[test]
fn plane_wave_matrix_is_independent_of_centre() {
    let xs = Grid1D::symmetric(5.0, 11).unwrap();
    let xd = Grid1D::symmetric(3.0, 13).unwrap();
    let k0 = 1.7;
    let f = pure_to_matrix(|x| Complex64::from_polar(1.0, k0 * x), xs, xd, Constants::NORMALIZED).unwrap();
    for i in 0..xs.len() {
        for (j, xdv) in xd.points().into_iter().enumerate() {
            let want = Complex64::from_polar(1.0, k0 * xdv);
            assert!((f.values[(i, j)] - want).norm() < 1e-13);
        }
    }
    assert_eq!(f.hermiticity_deviation().unwrap(), 0.0);
}

#[test]
fn diagonal_is_density() {
    let xs = Grid1D::symmetric(5.0, 21).unwrap();
    let xd = Grid1D::symmetric(2.0, 9).unwrap();
    let psi = |x: f64| Complex64::new((-x * x / 2.0).exp(), 0.3 * x);
    let f = pure_to_matrix(psi, xs, xd, Constants::NORMALIZED).unwrap();
    let d = f.diagonal().unwrap();
    for (v, x) in d.iter().zip(xs.points()) {
        assert_eq!(v.im, 0.0);
        assert!((v.re - psi(x).norm_sqr()).abs() < 1e-15);
    }
}

#[test]
fn real_eigenfunction_matrix_is_real_and_symmetric() {
    let basis = build_basis(4, 10.0).unwrap();
    let m = *basis.mode(2).unwrap();
    let xs = Grid1D::symmetric(4.0, 17).unwrap();
    let xd = Grid1D::symmetric(4.0, 17).unwrap();
    let f = pure_to_matrix(|x| Complex64::new(m.value(x).unwrap(), 0.0), xs, xd, Constants::NORMALIZED).unwrap();
    let n = xd.len();
    for i in 0..xs.len() {
        for j in 0..n {
            assert_eq!(f.values[(i, j)].im, 0.0);
            assert_eq!(f.values[(i, j)], f.values[(i, n - 1 - j)]);
        }
    }
}

#[test]
fn oscillator_ground_state_peak() {
    let c = Constants::NORMALIZED;
    let xs = Grid1D::symmetric(6.0, 61).unwrap();
    let xd = Grid1D::symmetric(20.0, 256).unwrap();
    let psi = |x: f64| Complex64::new((-x * x / 2.0).exp() / PI.powf(0.25), 0.0);
    let f = moyal_wigner(&pure_to_matrix(psi, xs, xd, c).unwrap()).unwrap();
    let i0 = xs.index_of(0.0).unwrap();
    let j0 = f.ps.index_of(0.0).unwrap();
    assert!((f.values[(i0, j0)] - 1.0 / PI).abs() < 1e-10);
    for (i, x) in xs.points().into_iter().enumerate() {
        for (j, p) in f.ps.points().into_iter().enumerate() {
            let want = (-(x * x + p * p)).exp() / PI;
            assert!((f.values[(i, j)] - want).abs() < 1e-10);
        }
    }
}

#[test]
fn round_trip_is_exact() {
    let c = Constants { hbar: 0.7, ..Constants::NORMALIZED };
    let xs = Grid1D::symmetric(3.0, 7).unwrap();
    let xd = Grid1D::symmetric(9.0, 64).unwrap();
    let psi = |x: f64| Complex64::new((-x * x).exp(), 0.0) * Complex64::from_polar(1.0, 0.8 * x);
    let m = pure_to_matrix(psi, xs, xd, c).unwrap();
    let w = moyal_wigner(&m).unwrap();
    let back = inverse_moyal_wigner(&w).unwrap();
    assert_eq!(back.xd.len(), xd.len());
    for (a, b) in back.values.iter().zip(m.values.iter()) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn rejects_non_hermitian_input() {
    let xs = Grid1D::symmetric(1.0, 3).unwrap();
    let xd = Grid1D::symmetric(1.0, 4).unwrap();
    let mut m = pure_to_matrix(|_| Complex64::new(1.0, 0.0), xs, xd, Constants::NORMALIZED).unwrap();
    m.values[(0, 0)] = Complex64::new(0.0, 1.0);
    assert!(matches!(moyal_wigner(&m), Err(Error::Symmetry { .. })));
}

#[test]
fn localized_state_observables() {
    let s = LocalizedState { x0: 2.0, k0: 3.0 };
    let c = Constants::NORMALIZED;
    let o = s.observables(&c, &PotentialSpec::Zero).unwrap();
    assert_eq!((o.q, o.p, o.e), (2.0, 3.0, 4.5));
}

#[test]
fn boosted_gaussian_observables() {
    let c = Constants::NORMALIZED;
    let xs = Grid1D::symmetric(10.0, 401).unwrap();
    let xd = Grid1D::symmetric(2.0, 81).unwrap();
    let (x0, k0) = (0.5, 1.5);
    let psi = |x: f64| {
        Complex64::from_polar(
            (-(x - x0) * (x - x0) / 2.0).exp() / std::f64::consts::PI.powf(0.25),
            k0 * x,
        )
    };
    let f = pure_to_matrix(psi, xs, xd, c).unwrap();
    let o = observables(&f, &PotentialSpec::Zero).unwrap();
    assert!((o.q - x0).abs() < 1e-8);
    assert!((o.p - k0).abs() < 1e-5);
    assert!((o.e - (0.25 + 0.5 * k0 * k0)).abs() < 1e-5);
}

#[test]
fn unresolved_center_is_an_error() {
    let c = Constants::NORMALIZED;
    let xs = Grid1D::symmetric(1.0, 5).unwrap();
    let xd = Grid1D::symmetric(1.0, 3).unwrap();
    let f = pure_to_matrix(|_| Complex64::new(1.0, 0.0), xs, xd, c).unwrap();
    assert!(matches!(observables(&f, &PotentialSpec::Zero), Err(Error::Resolution { .. })));
    let xd = Grid1D::symmetric(1.0, 6).unwrap();
    let f = pure_to_matrix(|_| Complex64::new(1.0, 0.0), xs, xd, c).unwrap();
    assert!(matches!(observables(&f, &PotentialSpec::Zero), Err(Error::Resolution { .. })));
}

#[test]
fn polynomial_derivatives() {
    let v = PotentialSpec::Quartic { coefficient: 1.0 };
    assert_eq!(v.derivative(3, 2.0).unwrap(), 48.0);
    assert_eq!(v.derivative(5, 2.0).unwrap(), 0.0);
    let h = PotentialSpec::harmonic(2.0, 3.0);
    assert_eq!(h.value(1.0).unwrap(), 9.0);
    assert_eq!(h.derivative(1, 1.0).unwrap(), 18.0);
}

#[test]
fn tabulated_has_no_derivatives() {
    let g = Grid1D::new(0.0, 1.0, 3).unwrap();
    let v = PotentialSpec::Tabulated {
        grid: g,
        values: vec![0.0, 1.0, 4.0],
    };
    assert_eq!(v.value(0.75).unwrap(), 2.5);
    assert_eq!(v.value(9.0).unwrap(), 4.0);
    assert!(matches!(v.derivative(1, 0.5), Err(Error::Derivative { .. })));
}

#[test]
fn delta_barrier_requires_positive_strength() {
    assert!(PotentialSpec::DeltaBarrier { strength: 0.0 }.validate().is_err());
    assert!(PotentialSpec::DeltaBarrier { strength: 1.0 }.validate().is_ok());
}

#[test]
fn classical_orbit_at_origin() {
    let (x, p) = classical_orbit(1.0, 2.0, 3.0, 0.0, 0.0);
    assert_eq!(x, 0.0);
    assert_eq!(p, 6f64.sqrt());
}

#[test]
fn orbit_conserves_energy() {
    let (m, w, e0) = (1.3, 0.7, 2.2);
    for i in 0..20 {
        let (x, p) = classical_orbit(m, w, e0, 0.4, i as f64 * 0.37);
        let e = p * p / (2.0 * m) + 0.5 * m * w * w * x * x;
        assert!((e - e0).abs() < 1e-12);
    }
}

#[test]
fn invalid_parameters() {
    let c = Constants::NORMALIZED;
    assert!(ReferenceKind::FreeGaussian { dx0: 0.0 }.wigner_value(&c, 0.0, 0.0, 0.0).is_err());
    assert!(ReferenceKind::HoGround { omega0: -1.0 }.validate().is_err());
    let k = ReferenceKind::HoClassical { omega0: 1.0, e0: -1.0, phase: 0.0 };
    assert!(k.delta(&c, 0.0).is_err());
}

#[test]
fn gaussian_minimum_uncertainty_at_zero() {
    let c = Constants::NORMALIZED;
    let dx0 = 0.8;
    let dp0 = c.hbar / (2.0 * dx0);
    assert!((gaussian_width(&c, dx0, 0.0) * dp0 - 0.5 * c.hbar).abs() < 1e-15);
}

fn gaussian_field(n: usize) -> WignerField {
    let xs = Grid1D::symmetric(12.0, n).unwrap();
    let ps = Grid1D::symmetric(12.0, n).unwrap();
    WignerField::from_fn(xs, ps, Constants::NORMALIZED, |x, p| {
        (-(x - 0.5) * (x - 0.5) - 0.7 * (p + 0.3) * (p + 0.3)).exp()
    })
}

#[test]
fn linear_potential_matches_classical() {
    let f = gaussian_field(96);
    let v = PotentialSpec::Linear { slope: 0.8 };
    let q = apply_quantum_generator(&f, &v).unwrap();
    let c = apply_classical_generator(&f, &v).unwrap();
    assert!(q.distance(&c) < 1e-10 * f.norm());
}

#[test]
fn delta_barrier_is_rejected() {
    let f = gaussian_field(16);
    let v = PotentialSpec::DeltaBarrier { strength: 1.0 };
    assert!(matches!(apply_quantum_generator(&f, &v), Err(Error::Unsupported { .. })));
    assert!(matches!(moyal_correction(&f, &v, 1), Err(Error::Unsupported { .. })));
}

#[test]
fn tabulated_has_no_classical_generator() {
    let f = gaussian_field(16);
    let grid = Grid1D::symmetric(5.0, 3).unwrap();
    let v = PotentialSpec::Tabulated {
        grid,
        values: vec![1.0, 0.0, 1.0],
    };
    assert!(apply_quantum_generator(&f, &v).is_ok());
    assert!(matches!(apply_classical_generator(&f, &v), Err(Error::Derivative { .. })));
    assert!(matches!(moyal_correction(&f, &v, 1), Err(Error::Derivative { .. })));
}
