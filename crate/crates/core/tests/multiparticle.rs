use num_complex::Complex64;
use qmtraj_core::multiparticle::*;
use qmtraj_core::targets::{Mollifier, TargetTrajectory};
use qmtraj_core::{Constants, Error, Grid1D};

const MASSES: (f64, f64) = (1.0, 2.0);

fn packet(v: f64, mass: f64, x0: f64, t: f64, xs: Grid1D) -> SingleParticleSlices {
    let c = Constants {
        mass,
        ..Constants::NORMALIZED
    };
    let f = Mollifier::cos4(2.0).unwrap();
    let pts = xs.points();
    let q = Complex64::new(0.0, mass * v / c.hbar);
    let phi0 = pts.iter().map(|&x| Complex64::from(f.value(x - x0 - v * t))).collect();
    let phi1 = pts.iter().map(|&x| q * f.value(x - x0 - v * t)).collect();
    SingleParticleSlices::new(xs, phi0, phi1).unwrap()
}

fn grid() -> Grid1D {
    Grid1D::symmetric(15.0, 301).unwrap()
}

fn product(v1: f64, v2: f64, t: f64) -> TwoParticleField {
    let a = packet(v1, MASSES.0, -5.0, t, grid());
    let b = packet(v2, MASSES.1, 5.0, t, grid());
    TwoParticleField::product(&a, &b, MASSES, 1.0).unwrap()
}

#[test]
fn product_is_separable() {
    let r = separability_residual(&product(1.0, -0.5, 0.3)).unwrap();
    assert!(r.r0 < 1e-10 && r.r1 < 1e-10 && r.r2 < 1e-10, "{r:?}");
}

#[test]
fn entangled_sum_is_not() {
    let f = product(1.0, -0.5, 0.0);
    let a = packet(0.0, MASSES.0, 5.0, 0.0, grid());
    let b = packet(0.0, MASSES.1, -5.0, 0.0, grid());
    let g = TwoParticleField::product(&a, &b, MASSES, 1.0).unwrap();
    let r = separability_residual(&f.sum(&g).unwrap()).unwrap();
    assert!(r.r0 > 0.1, "{r:?}");
    assert!(matches!(two_particle_observables(&f.sum(&g).unwrap(), 1e-6), Err(Error::NotSeparable { .. })));
}

#[test]
fn residuals_are_scale_and_phase_invariant() {
    let f = product(1.0, -0.5, 0.0);
    let g = TwoParticleField::product(&packet(0.3, 1.0, 2.0, 0.0, grid()), &packet(0.0, 2.0, -3.0, 0.0, grid()), MASSES, 1.0).unwrap();
    let h = f.sum(&g.scaled(Complex64::new(0.2, 0.0))).unwrap();
    let r = separability_residual(&h).unwrap();
    let s = separability_residual(&h.scaled(Complex64::from_polar(3.7, 0.9))).unwrap();
    assert!((r.r0 - s.r0).abs() < 1e-12 && (r.r1 - s.r1).abs() < 1e-12 && (r.r2 - s.r2).abs() < 1e-12);
}

#[test]
fn symmetric_packets_have_zero_totals() {
    let c1 = Constants::NORMALIZED;
    let xs = grid();
    // Particle 1 at −5 moving right, particle 2 at +5 with the opposite momentum.
    let a = packet(1.0, MASSES.0, -5.0, 0.0, xs);
    let b = packet(-0.5, MASSES.1, 5.0, 0.0, xs);
    let o = two_particle_observables(&TwoParticleField::product(&a, &b, MASSES, c1.hbar).unwrap(), 1e-8).unwrap();
    assert!(o.q.abs() < 1e-10 && o.p.abs() < 1e-10, "{o:?}");
    assert!((o.norms.0 - 1.0).abs() < 1e-8 && (o.norms.1 - 1.0).abs() < 1e-8);
}

#[test]
fn moving_times_static_gives_m1_v1() {
    let tt = TargetTrajectory::free(1.5, Mollifier::cos4(2.0).unwrap(), Constants::NORMALIZED).unwrap();
    let a = SingleParticleSlices::from_target(&tt, grid(), -2.0).unwrap();
    let b = packet(0.0, MASSES.1, 3.0, 0.0, grid());
    let o = two_particle_observables(&TwoParticleField::product(&a, &b, MASSES, 1.0).unwrap(), 1e-8).unwrap();
    assert!((o.p - MASSES.0 * 1.5).abs() < 1e-8, "{o:?}");
    assert!((o.q1 + 3.0).abs() < 1e-8 && (o.q2 - 3.0).abs() < 1e-8);
}

fn series(v1: f64, v2: f64, corrupt: f64) -> (Vec<TwoParticleField>, Vec<f64>) {
    let times: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    let fields = times
        .iter()
        .map(|&t| {
            let mut a = packet(v1, MASSES.0, -5.0, t, grid());
            a.phi1.iter_mut().for_each(|z| *z *= corrupt);
            TwoParticleField::product(&a, &packet(v2, MASSES.1, 5.0, t, grid()), MASSES, 1.0).unwrap()
        })
        .collect();
    (fields, times)
}

#[test]
fn free_products_satisfy_decoupled_continuity() {
    let (f, t) = series(1.0, -0.5, 1.0);
    let r = check_decoupled_continuity(&f, &t).unwrap();
    assert!(r.particle1 < 1e-3 && r.particle2 < 1e-3, "{r:?}");
}

#[test]
fn static_product_has_zero_residual() {
    let (f, t) = series(0.0, 0.0, 1.0);
    let r = check_decoupled_continuity(&f, &t).unwrap();
    assert_eq!((r.particle1, r.particle2), (0.0, 0.0));
}

#[test]
fn corruption_scales_linearly() {
    let (f, t) = series(1.0, -0.5, 1.1);
    let r1 = check_decoupled_continuity(&f, &t).unwrap().particle1;
    let (f, t) = series(1.0, -0.5, 1.2);
    let r2 = check_decoupled_continuity(&f, &t).unwrap().particle1;
    assert!((r1 - 0.1).abs() < 2e-3 && (r2 - 0.2).abs() < 2e-3, "{r1} {r2}");
}

#[test]
fn needs_three_times_and_distinct_masses() {
    let (f, t) = series(1.0, -0.5, 1.0);
    assert!(matches!(check_decoupled_continuity(&f[..2], &t[..2]), Err(Error::TooFewSamples { .. })));
    let a = packet(1.0, 1.0, 0.0, 0.0, grid());
    assert!(TwoParticleField::product(&a, &a, (1.0, 1.0), 1.0).is_err());
}

#[test]
fn zero_field_is_undefined() {
    let f = product(1.0, 1.0, 0.0).scaled(Complex64::default());
    assert!(matches!(separability_residual(&f), Err(Error::ZeroDensity)));
}
