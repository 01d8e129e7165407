use proptest::prelude::*;
use rabigauge::analysis::{argmin, eta_grid};
use rabigauge::{
    coupling_operators, f_ratio, f_ratio_from_couplings, foster_map, optimize_eta, presets, sigma_deviation,
    solve_fluxonium, sweep_omega_bar, AutoCutoffs, Error, Evaluation, FluxoniumSpec, FosterForm, FosterMode,
    GaugeStudy, GaugeSystem, ModeSummary, Objective, OptimizeSettings, StudySettings, SweepSettings,
    TruncationSettings,
};

fn settings(grid_points: usize) -> OptimizeSettings {
    OptimizeSettings {
        grid_points,
        refine: true,
        tolerance: 1e-4,
    }
}

#[test]
fn sigma_of_a_single_shifted_level() {
    let full = [0.0, 1.0, 2.0];
    let eff = [5.0, 6.0, 7.3];
    assert!((sigma_deviation(&full, &eff, 2).unwrap() - (0.09f64 / 2.0).sqrt()).abs() < 1e-15);
    assert!(matches!(sigma_deviation(&full, &eff, 3), Err(Error::SpectrumLength { needed: 4, got: 3 })));
    assert!(sigma_deviation(&full, &eff, 0).is_err());
}

#[test]
fn equal_impedances_give_the_plain_mean() {
    let s = ModeSummary::new(vec![4.0, 10.0], vec![50.0, 50.0]).unwrap();
    assert_eq!(s.weights, vec![0.5, 0.5]);
    assert!((s.mean_frequency - 7.0).abs() < 1e-15);
    // p_k ∝ Z^{-1/2}: a four times larger impedance halves the weight.
    let s = ModeSummary::new(vec![3.0, 6.0], vec![200.0, 50.0]).unwrap();
    assert!((s.weights[0] - 1.0 / 3.0).abs() < 1e-15);
    assert!((s.mean_frequency - 5.0).abs() < 1e-14);
    assert!(ModeSummary::new(vec![], vec![]).is_err());
}

#[test]
fn criterion_for_the_reference_qubit() {
    let q = solve_fluxonium(&presets::reference_qubit(), 150, 12).unwrap();
    let modes = ModeSummary::new(vec![10.7], vec![50.0]).unwrap();
    let f = f_ratio(2, 1, &q, &modes).unwrap();
    assert!((f - 10.7 / 12.958333).abs() < 1e-6);
    assert!(f_ratio(1, 2, &q, &modes).is_err());
    assert!(f_ratio(12, 0, &q, &modes).is_err());
}

#[test]
fn grid_search_refines_a_parabola() {
    let r = optimize_eta(|x| Ok(Evaluation::from((x - 0.3712).powi(2))), &settings(11)).unwrap();
    assert_eq!(r.grid_argmin, 4);
    assert!((r.eta_opt - 0.3712).abs() < 1e-3);
    assert!(r.failures.is_empty());
}

#[test]
fn ties_resolve_to_the_smaller_gauge() {
    let r = optimize_eta(|_| Ok(Evaluation::from(1.0)), &settings(11)).unwrap();
    assert_eq!(r.eta_opt, 0.0);
    assert_eq!(argmin(&[None, Some(2.0), Some(1.0), Some(1.0)]), Some(2));
}

#[test]
fn coarse_grids_and_dead_objectives_are_errors() {
    let ok = |x: f64| Ok(Evaluation::from(x));
    assert!(matches!(
        optimize_eta(ok, &settings(10)),
        Err(Error::GridTooCoarse { min: 11, got: 10 })
    ));
    assert!(matches!(
        optimize_eta(|_| Err(Error::EtaOutOfRange(2.0)), &settings(11)),
        Err(Error::NoValidPoints)
    ));
}

#[test]
fn failed_points_are_reported_and_skipped() {
    let objective = |x: f64| {
        if x > 0.65 {
            Err(Error::EtaOutOfRange(x))
        } else if (x - 0.1).abs() < 1e-9 {
            Ok(Evaluation::from(f64::NAN))
        } else {
            Ok(Evaluation::from((x - 0.5).abs()))
        }
    };
    let r = optimize_eta(objective, &settings(11)).unwrap();
    assert_eq!(r.failures.len(), 5);
    assert_eq!(r.curve.iter().filter(|v| v.is_none()).count(), 5);
    assert!((r.eta_opt - 0.5).abs() < 1e-3);
}

#[test]
fn study_is_deterministic() {
    let foster = foster_map(&presets::single_resonator(&presets::reference_qubit(), 0.07).unwrap()).unwrap();
    let q = solve_fluxonium(&FluxoniumSpec::from_foster(&foster), 150, 6).unwrap();
    let system = GaugeSystem::new(&q, &foster, &TruncationSettings::new(6, vec![6])).unwrap();
    let mut s = StudySettings::for_qubit(q.transition(1, 0));
    s.levels = 8;
    let study = GaugeStudy::new(system, s).unwrap();
    let a = study.optimize(Objective::Sigma, &settings(11)).unwrap();
    let b = study.optimize(Objective::Sigma, &settings(11)).unwrap();
    assert_eq!(a, b);
    assert!(study.mean_spacing() > 0.0);
    assert!(study.evaluate(Objective::H2Norm, 0.5).unwrap().value > 0.0);
}

#[test]
fn small_sweep_has_consistent_shape() {
    let spec = presets::reference_qubit();
    let base = presets::two_resonator_family(&spec, 0.07).unwrap();
    let l = presets::sweep_inductances(&base, 1.0, 12.0, 3);
    let q = solve_fluxonium(&spec, 150, 6).unwrap();
    let mut study = StudySettings::for_qubit(q.transition(1, 0));
    study.levels = 6;
    let settings = SweepSettings {
        eta_points: 5,
        qubit_levels: 6,
        basis_size: 150,
        cutoffs: AutoCutoffs {
            max: 4,
            ..AutoCutoffs::default()
        },
        dimension_budget: 6000,
        study,
    };
    let r = sweep_omega_bar(&base, &l, &settings).unwrap();
    assert_eq!(r.eta, eta_grid(5));
    assert_eq!(r.sigma.len(), 3);
    assert!(r.sigma.iter().all(|row| row.len() == 5 && row.iter().all(Option::is_some)));
    assert!(r.omega_bar.windows(2).all(|w| w[1] > w[0]));
    assert!(r.omega_2.iter().zip([1.0, 12f64.sqrt(), 12.0]).all(|(a, b)| (a - b).abs() < 1e-9 * b));
    assert_eq!(r, sweep_omega_bar(&base, &l, &settings).unwrap());

    let mut one = base.clone();
    one.resonators.pop();
    assert!(sweep_omega_bar(&one, &l, &settings).is_err());
}

#[test]
fn second_mode_couplings_cross_as_the_mean_frequency_grows() {
    let spec = presets::reference_qubit();
    let base = presets::two_resonator_family(&spec, 0.07).unwrap();
    let mut previous: Option<(f64, f64, f64, f64)> = None;
    for l in presets::sweep_inductances(&base, 0.25, 17.0, 12) {
        let mut c = base.clone();
        c.resonators[1].inductance = l;
        let foster = foster_map(&c).unwrap();
        let q = solve_fluxonium(&FluxoniumSpec::from_foster(&foster), 150, 4).unwrap();
        let g = coupling_operators(&q, &foster, 1).unwrap();
        let w = foster.modes[1].frequency();
        let bar = ModeSummary::from_foster(&foster).unwrap().mean_frequency;
        let (flux, charge) = (g.flux[(2, 1)].abs(), g.charge[(2, 1)].abs());
        if let Some((b0, f0, q0, w0)) = previous {
            assert!(bar > b0);
            assert!(flux > f0);
            // Measured in units of the mode frequency, the charge coupling falls.
            assert!(charge / w < q0 / w0);
            assert!(flux / w > f0 / w0);
        }
        previous = Some((bar, flux, charge, w));
    }
}

fn foster_strategy() -> impl Strategy<Value = FosterForm> {
    prop::collection::vec((0.5..50.0f64, 0.5..50.0f64), 1..=2).prop_map(|modes| {
        let modes = modes
            .into_iter()
            .map(|(c, l)| FosterMode {
                capacitance: c,
                inductance: l,
            })
            .collect();
        FosterForm::from_qubit_energies(12.5, 3.75, 0.5, std::f64::consts::PI, modes).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weights_form_a_distribution(
        modes in prop::collection::vec((0.1..20.0f64, 1.0..500.0f64), 1..6)
    ) {
        let (w, z): (Vec<f64>, Vec<f64>) = modes.into_iter().unzip();
        let s = ModeSummary::new(w.clone(), z).unwrap();
        prop_assert!((s.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(s.weights.iter().all(|&p| p > 0.0));
        let lo = w.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(s.mean_frequency >= lo * (1.0 - 1e-12) && s.mean_frequency <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn criterion_matches_summed_couplings(foster in foster_strategy()) {
        let q = solve_fluxonium(&FluxoniumSpec::from_foster(&foster), 150, 4).unwrap();
        let summary = ModeSummary::from_foster(&foster).unwrap();
        for (n, m) in [(1, 0), (2, 1), (3, 0)] {
            let closed = f_ratio(n, m, &q, &summary).unwrap();
            let summed = f_ratio_from_couplings(n, m, &q, &foster).unwrap();
            prop_assert!((closed - summed).abs() <= 1e-10 * closed);
        }
    }

    #[test]
    fn sigma_ignores_common_offsets(
        levels in prop::collection::vec(-5.0..5.0f64, 4..10),
        offset in -100.0..100.0f64,
    ) {
        let shifted: Vec<f64> = levels.iter().map(|e| e + offset).collect();
        let m = levels.len() - 1;
        prop_assert!(sigma_deviation(&levels, &shifted, m).unwrap() < 1e-12);
    }
}
