use std::f64::consts::PI;

use proptest::prelude::*;
use rabigauge::linalg::asymmetry;
use rabigauge::{charge_from_flux_check, presets, solve_fluxonium, Error, FluxoniumSpec};

#[test]
fn reference_transitions() {
    let q = solve_fluxonium(&presets::reference_qubit(), 150, 12).unwrap();
    assert!((q.transition(1, 0) - 0.5077233969).abs() < 1e-8);
    assert!((q.transition(2, 1) - 12.958333).abs() < 1e-5);
}

#[test]
fn reference_qubit_parity_alternates() {
    let q = solve_fluxonium(&presets::reference_qubit(), 150, 6).unwrap();
    for w in q.parity.windows(2) {
        assert_eq!(w[0], -w[1]);
    }
    // Same-parity states are not connected by φ̂.
    assert!(q.flux[(0, 2)].abs() < 1e-10);
    assert!(q.flux[(1, 0)].abs() > 1.0);
}

#[test]
fn harmonic_limit_is_evenly_spaced() {
    let spec = FluxoniumSpec::new(0.0, 2.0, 1.0, 0.3);
    let q = solve_fluxonium(&spec, 80, 8).unwrap();
    let w = (8.0_f64 * 2.0 * 1.0).sqrt();
    for n in 1..8 {
        assert!((q.transition(n, n - 1) - w).abs() < 1e-9);
    }
    assert!((q.energies[0] - w / 2.0).abs() < 1e-9);
}

#[test]
fn eigensystem_is_bit_reproducible() {
    let a = solve_fluxonium(&presets::reference_qubit(), 150, 12).unwrap();
    let b = solve_fluxonium(&presets::reference_qubit(), 150, 12).unwrap();
    assert_eq!(a.energies, b.energies);
    assert_eq!(a.flux, b.flux);
    assert_eq!(a.charge, b.charge);
}

#[test]
fn truncation_keeps_the_lowest_block() {
    let q = solve_fluxonium(&presets::reference_qubit(), 150, 12).unwrap();
    let t = q.truncated(4).unwrap();
    assert_eq!(t.energies, q.energies[..4]);
    assert_eq!(t.flux[(3, 2)], q.flux[(3, 2)]);
    assert!(q.truncated(13).is_err());
}

#[test]
fn undersized_basis_is_reported() {
    let spec = presets::reference_qubit();
    assert!(matches!(solve_fluxonium(&spec, 40, 12), Err(Error::InvalidParameter { .. })));
    assert!(matches!(solve_fluxonium(&spec, 48, 12), Err(Error::Truncation { .. })));
}

#[test]
fn invalid_energies_are_rejected() {
    let spec = FluxoniumSpec::new(12.5, 0.0, 0.5, PI);
    assert!(matches!(solve_fluxonium(&spec, 150, 12), Err(Error::InvalidParameter { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn eigensystem_invariants(
        e_j in 0.0..15.0f64,
        e_c in 0.5..5.0f64,
        e_l in 0.2..2.0f64,
        phi in 0.0..(2.0 * PI),
    ) {
        let spec = FluxoniumSpec::new(e_j, e_c, e_l, phi);
        let q = match solve_fluxonium(&spec, 200, 8) {
            Ok(q) => q,
            Err(Error::Truncation { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(q.energies.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(asymmetry(q.flux.as_ref()) < 1e-12);
        prop_assert!(asymmetry(q.flux_squared.as_ref()) < 1e-12);
        let n = q.kept_levels();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((q.charge[(i, j)] + q.charge[(j, i)]).abs() < 1e-12);
            }
        }
        prop_assert!(charge_from_flux_check(&q, &spec) < 1e-6);
    }
}
