use ndarray::Array2;
use num_complex::Complex64;
use qmtraj_core::basis::build_basis;
use qmtraj_core::phasespace::PotentialSpec;
use qmtraj_core::synth::{packet_series, CoefficientMatrix, SpectralField};
use qmtraj_core::targets::{Hierarchy, Mollifier, TargetTrajectory};
use qmtraj_core::verify::*;
use qmtraj_core::{Constants, Grid1D};

const C: Constants = Constants::NORMALIZED;

fn spectral_hierarchy() -> Hierarchy {
    let basis = build_basis(5, 8.0).unwrap();
    let real: Vec<f64> = (0..36).map(|i| ((i * 7 % 11) as f64 - 5.0) / 7.0).collect();
    let coeffs = CoefficientMatrix::from_real(6, &real).unwrap();
    let field = SpectralField::new(basis, coeffs).unwrap();
    let xs = Grid1D::symmetric(8.0, 1601).unwrap();
    let times: Vec<f64> = (0..41).map(|i| 0.3 + 0.005 * i as f64).collect();
    field.hierarchy(&xs, &times).unwrap()
}

fn barrier() -> PotentialSpec {
    PotentialSpec::DeltaBarrier { strength: 1.0 }
}

#[test]
fn spectral_reconstruction_satisfies_hierarchy() {
    let h = spectral_hierarchy();
    let r = check_hierarchy(&h, &barrier(), &C, &HierarchyOptions::default()).unwrap();
    for v in r.relations.iter().chain(&r.jumps) {
        assert!(*v < 1e-3, "{r:?}");
    }
    assert!(r.pass);
}

#[test]
fn corrupted_momentum_scales_residual() {
    let mut h = spectral_hierarchy();
    h.phi[1].mapv_inplace(|v| v * 1.1);
    let r = check_hierarchy(&h, &barrier(), &C, &HierarchyOptions::default()).unwrap();
    assert!((r.relations[0] - 0.1).abs() < 5e-3, "{}", r.relations[0]);
    assert!(!r.pass);
}

#[test]
fn static_plane_wave_continuity_is_exact() {
    let xs = Grid1D::symmetric(5.0, 101).unwrap();
    let times = vec![0.0, 0.1, 0.2, 0.3, 0.4];
    let k = 1.3;
    let phi = std::array::from_fn(|n| Array2::from_elem((5, 101), Complex64::new(0.0, k).powu(n as u32)));
    let h = Hierarchy { xs, times, phi };
    let r = check_hierarchy(&h, &PotentialSpec::Zero, &C, &HierarchyOptions::default()).unwrap();
    assert_eq!(r.relations[0], 0.0);
}

#[test]
fn mismatched_shapes_rejected() {
    let mut h = spectral_hierarchy();
    h.phi[2] = Array2::zeros((3, 3));
    assert!(check_hierarchy(&h, &barrier(), &C, &HierarchyOptions::default()).is_err());
}

fn window_times(tt: &TargetTrajectory) -> Vec<f64> {
    let w = tt.mollifier.support() / tt.speed;
    (0..=20).map(|i| -w + 2.0 * w * i as f64 / 20.0).collect()
}

#[test]
fn naive_fails_and_corrected_passes_boundary_checks() {
    let f = Mollifier::cos4(3.0).unwrap();
    let xs = Grid1D::symmetric(40.0, 1601).unwrap();
    let naive = TargetTrajectory::naive_transmitted(1.0, f, C).unwrap();
    let rn = check_boundary_decay(&naive.hierarchy(&xs, &window_times(&naive)).unwrap(), 1e-6);
    assert!(!rn.ehrenfest_pass && !rn.energy_pass, "{rn:?}");
    assert!(rn.unitarity_pass);
    let fixed = TargetTrajectory::transmitted(1.0, f, None, C).unwrap();
    let rf = check_boundary_decay(&fixed.hierarchy(&xs, &window_times(&fixed)).unwrap(), 1e-6);
    assert!(rf.pass(), "{rf:?}");
}

#[test]
fn reflected_edges_vanish() {
    let f = Mollifier::cos4(3.0).unwrap();
    let xs = Grid1D::symmetric(40.0, 1601).unwrap();
    let tt = TargetTrajectory::reflected(1.0, f, C).unwrap();
    let times: Vec<f64> = (-25..=25).map(|t| t as f64).collect();
    let r = check_boundary_decay(&tt.hierarchy(&xs, &times).unwrap(), 1e-6);
    assert_eq!([r.phi1, r.x_phi1, r.phi2, r.phi3], [0.0; 4]);
}

#[test]
fn targets_conserve_mass() {
    let f = Mollifier::cos4(3.0).unwrap();
    let times: Vec<f64> = (-30..=30).map(|t| t as f64 * 0.5).collect();
    for tt in [TargetTrajectory::reflected(1.0, f, C).unwrap(), TargetTrajectory::transmitted(1.0, f, None, C).unwrap()] {
        let masses: Vec<f64> = times.iter().map(|&t| tt.totals(t, 40.0).unwrap().0).collect();
        let r = check_mass_series(&masses, 0.05).unwrap();
        assert!(r.drift < 1e-10, "{r:?}");
    }
}

#[test]
fn reflected_grid_mass_is_exact() {
    let f = Mollifier::cos4(3.0).unwrap();
    let xs = Grid1D::symmetric(40.0, 1601).unwrap();
    let tt = TargetTrajectory::reflected(1.0, f, C).unwrap();
    let times: Vec<f64> = (-30..=30).map(|t| t as f64 * 0.5).collect();
    let r = check_unitarity(&tt.sample(&xs, &times).unwrap(), 0.05).unwrap();
    assert!(r.drift < 1e-10, "{r:?}");
}

#[test]
fn unitarity_needs_two_samples() {
    let f = Mollifier::cos4(3.0).unwrap();
    let xs = Grid1D::symmetric(40.0, 801).unwrap();
    let tt = TargetTrajectory::reflected(1.0, f, C).unwrap();
    assert!(check_unitarity(&tt.sample(&xs, &[1.0]).unwrap(), 0.05).is_err());
}

#[test]
fn reflected_centre_moves_at_plus_minus_v() {
    let f = Mollifier::cos4(3.0).unwrap();
    let xs = Grid1D::symmetric(40.0, 3201).unwrap();
    let v = 1.0;
    let tt = TargetTrajectory::reflected(v, f, C).unwrap();
    let times: Vec<f64> = (-300..=300).map(|t| t as f64 * 0.1).collect();
    let st = packet_series(&tt.sample(&xs, &times).unwrap()).unwrap();
    for (i, &t) in times.iter().enumerate() {
        if t.abs() > 5.0 && i > 0 && i + 1 < times.len() {
            let slope = (st.mean[i + 1] - st.mean[i - 1]) / 0.2;
            let want = if t < 0.0 { v } else { -v };
            assert!((slope - want).abs() < 0.02 * v, "t = {t}: {slope}");
        }
    }
}

#[test]
fn harmonic_levels_satisfy_quantization() {
    let omega0 = 1.7;
    let period = std::f64::consts::TAU / omega0;
    for m in 0..12 {
        for n in 0..12 {
            let e = |j: usize| omega0 * (j as f64 + 0.5);
            let r = quantization_check(e(m), e(n), period, 1.0, 1e-12).unwrap();
            assert!(r.passes && r.residual < 1e-12);
            assert_eq!(r.nearest, m as i64 - n as i64);
        }
    }
    assert!(!quantization_check(0.5, 0.7, 1.0, 1.0, 1e-12).unwrap().passes);
}

#[test]
fn report_flags_follow_residuals() {
    let mut rep = PhysicsReport::new(Tolerances::default());
    assert!(rep.passed());
    rep.unitarity = Some(UnitarityReport {
        drift: 0.1,
        relative_drift: 0.1,
        reference_mass: 1.0,
        pass: false,
    });
    assert!(!rep.passed());
}

#[test]
fn localization_reference_width() {
    let f = Mollifier::cos4(3.0).unwrap();
    let s = mollifier_sigma(&f).unwrap();
    let g = Mollifier::cos4(6.0).unwrap();
    assert!((mollifier_sigma(&g).unwrap() / s - 2.0).abs() < 1e-6);
}


#[test]
fn degenerate_pair_passes() {
    let r = quantization_check(0.3, 0.3, 2.0, 1.0, 1e-12).unwrap();
    assert!(r.passes);
    assert_eq!(r.nearest, 0);
}

#[test]
fn rejects_bad_period() {
    assert!(quantization_check(1.0, 0.0, 0.0, 1.0, 1e-12).is_err());
}
