use std::f64::consts::{FRAC_PI_2, PI};

use qmtraj_core::basis::{build_basis, mode_bracket, scattering_amplitudes, solve_mode};
use qmtraj_core::{Constants, Error, Parity};

#[test]
fn odd_mode_wavenumber() {
    let m = solve_mode(1, 100.0, &Constants::NORMALIZED).unwrap();
    assert_eq!(m.parity, Parity::Odd);
    assert_eq!(m.phase, 0.0);
    assert!((m.wavenumber - PI / 100.0).abs() < 1e-15);
    assert!((m.wavenumber - 0.0314159).abs() < 1e-7);
}

#[test]
fn ground_even_mode_solves_coupled_equations() {
    let m = solve_mode(0, 100.0, &Constants::NORMALIZED).unwrap();
    assert_eq!(m.parity, Parity::Even);
    assert!(m.phase > 0.0 && m.phase < FRAC_PI_2);
    assert!((m.phase * m.phase.tan() - 100.0).abs() / 100.0 < 1e-10);
    assert!((m.wavenumber - m.phase / 100.0).abs() < 1e-15);
    assert!(m.eigen_residual(&Constants::NORMALIZED) < 1e-10);
}

#[test]
fn high_even_modes_approach_free_limit() {
    let b = build_basis(400, 10.0).unwrap();
    let m = b.mode(400).unwrap();
    assert!(m.phase < 0.02);
    let (lo, hi) = mode_bracket(400);
    let kl = m.wavenumber * 10.0;
    assert!(kl > lo && kl < hi);
    assert!((kl - lo) / lo < 1e-4);
}

#[test]
fn even_mode_at_origin_and_kink() {
    let b = build_basis(4, 10.0).unwrap();
    let m = b.mode(2).unwrap();
    assert!((m.value(0.0).unwrap() - m.phase.cos()).abs() < 1e-15);
    // one-sided finite differences at step 1e-6
    let h = 1e-6;
    let right = (m.value(2.0 * h).unwrap() - m.value(h).unwrap()) / h;
    let left = (m.value(-h).unwrap() - m.value(-2.0 * h).unwrap()) / h;
    let expected = 2.0 * m.wavenumber * m.phase.sin();
    assert!((right - left - expected).abs() < 1e-5, "{} vs {}", right - left, expected);
    assert!((m.kink_jump() - expected).abs() < 1e-15);
    assert_eq!(m.derivative(0.0).unwrap(), 0.0);
}

#[test]
fn odd_mode_vanishes_at_origin() {
    let b = build_basis(3, 10.0).unwrap();
    assert_eq!(b.mode(3).unwrap().value(0.0).unwrap(), 0.0);
}

#[test]
fn outside_domain_is_an_error() {
    let b = build_basis(2, 5.0).unwrap();
    assert!(matches!(b.mode(0).unwrap().value(5.5), Err(Error::Domain { .. })));
}

#[test]
fn smallest_basis() {
    let b = build_basis(1, 10.0).unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(b.mode(0).unwrap().parity, Parity::Even);
    assert_eq!(b.mode(1).unwrap().parity, Parity::Odd);
    assert!(build_basis(0, 10.0).is_err());
}

#[test]
fn periodic_smoothness_at_the_walls() {
    let b = build_basis(30, 17.0).unwrap();
    for m in b.modes() {
        let l = b.half_width();
        assert!((m.value(l).unwrap() - m.value(-l).unwrap()).abs() < 1e-10);
        let scale = m.wavenumber;
        assert!((m.derivative(l).unwrap() - m.derivative(-l).unwrap()).abs() < 1e-10 * scale.max(1.0));
    }
}

#[test]
fn even_mode_identity() {
    let b = build_basis(60, 40.0).unwrap();
    for m in b.modes().iter().filter(|m| m.parity == Parity::Even) {
        assert!((m.wavenumber * m.phase.sin() - m.phase.cos()).abs() < 1e-12);
    }
}

#[test]
fn helmholtz_away_from_barrier() {
    let b = build_basis(12, 20.0).unwrap();
    let h = 1e-3;
    for m in b.modes() {
        for &x in &[-13.0, -2.5, 0.7, 9.1] {
            let d2 = (m.value(x + h).unwrap() - 2.0 * m.value(x).unwrap() + m.value(x - h).unwrap()) / (h * h);
            assert!((d2 + m.wavenumber.powi(2) * m.value(x).unwrap()).abs() < 1e-6);
        }
    }
}

#[test]
fn amplitudes_at_equal_probability_speed() {
    let (r, t) = scattering_amplitudes(1.0, &Constants::NORMALIZED).unwrap();
    assert!((t.norm_sqr() - 0.5).abs() < 1e-15);
    assert!((r.norm_sqr() - 0.5).abs() < 1e-15);
    let (_, t2) = scattering_amplitudes(2.0, &Constants::NORMALIZED).unwrap();
    assert!((t2.norm_sqr() - 0.8).abs() < 1e-15);
    let (_, t_big) = scattering_amplitudes(1e6, &Constants::NORMALIZED).unwrap();
    assert!(1.0 - t_big.norm_sqr() < 1e-11);
    assert!(scattering_amplitudes(0.0, &Constants::NORMALIZED).is_err());
    assert!(scattering_amplitudes(-1.0, &Constants::NORMALIZED).is_err());
}

#[test]
fn unitarity_of_scattering() {
    for i in 0..100 {
        let k = 0.1 * 100f64.powf((i as f64 + 1.0) / 100.0);
        let (r, t) = scattering_amplitudes(k, &Constants::NORMALIZED).unwrap();
        assert!((r.norm_sqr() + t.norm_sqr() - 1.0).abs() < 1e-12);
    }
}
