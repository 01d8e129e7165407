use faer::Mat;
use proptest::prelude::*;
use rabigauge::linalg::{eigh, max_abs, select, spectral_map};
use rabigauge::swt::exact_assignment;
use rabigauge::{
    foster_map, h2_norm, presets, solve_fluxonium, sw_exact, sw_order, BlockSplit, DenominatorPolicy, Error,
    FluxoniumSpec, GaugeSystem, HermitianOperator, NormKind, ProductBasis, SwOrder, SwWarning, TruncationSettings,
};

const POLICY: DenominatorPolicy = DenominatorPolicy::Error { floor: 1e-4 };

fn system(qubit_levels: usize, cutoff: usize) -> GaugeSystem {
    let foster = foster_map(&presets::single_resonator(&presets::reference_qubit(), 0.07).unwrap()).unwrap();
    let q = solve_fluxonium(&FluxoniumSpec::from_foster(&foster), 150, qubit_levels).unwrap();
    GaugeSystem::new(&q, &foster, &TruncationSettings::new(qubit_levels, vec![cutoff])).unwrap()
}

fn diagonal(values: &[f64], basis: ProductBasis) -> HermitianOperator {
    let n = values.len();
    HermitianOperator::new(Mat::from_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 }), basis).unwrap()
}

/// `√M = (1 + M)(2 + M + Mᵀ)^{−1/2}` for orthogonal `M` without eigenvalue −1.
fn orthogonal_sqrt(m: &Mat<f64>) -> Mat<f64> {
    let n = m.nrows();
    let id = Mat::<f64>::identity(n, n);
    let sym = &id * faer::Scale(2.0) + m + m.transpose();
    let inv_root = spectral_map(sym.as_ref(), |x| 1.0 / x.sqrt()).unwrap();
    (&id + m) * inv_root
}

#[test]
fn exact_transformation_matches_literal_direct_rotation() {
    let s = system(4, 3);
    let h = s.build_full(0.6).unwrap();
    let split = BlockSplit::two_level(s.basis());
    let n = h.dim();
    let (_, vectors) = eigh(h.matrix.as_ref()).unwrap();
    let picked = exact_assignment(&vectors, &split);
    let all: Vec<usize> = (0..n).collect();
    let v_model = select(vectors.as_ref(), &all, &picked);
    let p_exact = &v_model * v_model.transpose();
    let p = split.projector();
    let id = Mat::<f64>::identity(n, n);
    let reflect = |q: &Mat<f64>| q * faer::Scale(2.0) - &id;
    // U maps the exact model eigenspace onto span(P).
    let u = orthogonal_sqrt(&(reflect(&p) * reflect(&p_exact)));
    assert!(max_abs((&u * &p_exact * u.transpose() - &p).as_ref()) < 1e-10);
    let rotated = &u * &h.matrix * u.transpose();
    let literal = select(rotated.as_ref(), &split.model, &split.model);
    let eff = sw_exact(&h, &split).unwrap();
    assert!(max_abs((&literal - &eff.matrix).as_ref()) < 1e-10);
    assert_eq!(eff.order, SwOrder::Exact);
}

#[test]
fn exact_transformation_keeps_exact_eigenvalues() {
    let s = system(6, 4);
    let h = s.build_full(0.3).unwrap();
    let split = BlockSplit::two_level(s.basis());
    let (values, vectors) = h.eigh().unwrap();
    let picked = exact_assignment(&vectors, &split);
    let eff = sw_exact(&h, &split).unwrap().eigenvalues().unwrap();
    for (e, &j) in eff.iter().zip(&picked) {
        assert!((e - values[j]).abs() < 1e-10);
    }
}

#[test]
fn third_order_error_scales_with_fourth_power() {
    let s = system(3, 2);
    let h0 = s.bare();
    let v = s.interaction(0.5, true).unwrap();
    let split = BlockSplit::two_level(s.basis());
    let residual = |lambda: f64| {
        let vl = v.scaled(lambda);
        let exact = sw_exact(&h0.add(&vl).unwrap(), &split).unwrap().eigenvalues().unwrap();
        let third = sw_order(&h0, &vl, &split, 3, POLICY).unwrap().eigenvalues().unwrap();
        exact.iter().zip(&third).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    let (a, b) = (residual(0.2), residual(0.1));
    let slope = (a / b).log2();
    assert!(slope > 3.7, "slope {slope}");
}

#[test]
fn degenerate_denominators_follow_the_policy() {
    let basis = ProductBasis::new(4, &[0]);
    let h0 = diagonal(&[0.0, 1.0, 1.0, 3.0], basis.clone());
    let mut v = Mat::zeros(4, 4);
    v[(1, 2)] = 0.1;
    v[(2, 1)] = 0.1;
    let v = HermitianOperator::new(v, basis.clone()).unwrap();
    let split = BlockSplit::two_level(&basis);
    assert!(matches!(
        sw_order(&h0, &v, &split, 2, DenominatorPolicy::Error { floor: 1e-3 }),
        Err(Error::SmallDenominator { model: 1, complement: 2, .. })
    ));
    let eff = sw_order(&h0, &v, &split, 2, DenominatorPolicy::Regularize { floor: 1e-3 }).unwrap();
    assert!(matches!(eff.warnings[..], [SwWarning::RegularizedDenominator { model: 1, complement: 2, .. }]));
    assert!(eff.matrix.as_ref().norm_l2().is_finite());
}

#[test]
fn perturbative_order_requires_diagonal_reference() {
    let s = system(3, 2);
    let full = s.build_full(0.5).unwrap();
    let v = s.interaction(0.5, true).unwrap();
    let split = BlockSplit::two_level(s.basis());
    assert!(matches!(sw_order(&full, &v, &split, 2, POLICY), Err(Error::NotDiagonal(_))));
    assert!(sw_order(&s.bare(), &v, &split, 0, POLICY).is_err());
    assert!(sw_order(&s.bare(), &v, &split, 4, POLICY).is_err());
}

#[test]
fn norms_are_ordered() {
    let s = system(6, 4);
    for eta in [0.0, 0.5, 1.0] {
        let norm = |k| h2_norm(&s, eta, k, None, POLICY).unwrap().0;
        let (nuc, fro, spec) = (norm(NormKind::Nuclear), norm(NormKind::Frobenius), norm(NormKind::Spectral));
        assert!(spec <= fro + 1e-12 && fro <= nuc + 1e-12);
        let windowed = h2_norm(&s, eta, NormKind::Nuclear, Some(1), POLICY).unwrap().0;
        assert!(windowed <= nuc + 1e-12);
    }
}

#[test]
fn order_labels() {
    assert_eq!(SwOrder::Finite(2).to_string(), "2");
    assert_eq!(SwOrder::Exact.to_string(), "inf");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projector_is_idempotent(levels in 2usize..6, cutoff in 0usize..4, model in 1usize..6) {
        let basis = ProductBasis::new(levels, &[cutoff]);
        let split = BlockSplit::qubit_levels(&basis, model);
        let p = split.projector();
        prop_assert_eq!(&p * &p, p.clone());
        prop_assert_eq!(split.model.len() + split.complement.len(), basis.dim());
        prop_assert_eq!(split.model_basis().dim(), split.model.len());
    }

    #[test]
    fn terms_scale_with_their_order(lambda in 0.1..3.0f64, eta in 0.0..=1.0f64) {
        let s = system(3, 2);
        let h0 = s.bare();
        let v = s.interaction(eta, true).unwrap();
        let split = BlockSplit::two_level(s.basis());
        let base = sw_order(&h0, &v, &split, 3, POLICY).unwrap();
        let scaled = sw_order(&h0, &v.scaled(lambda), &split, 3, POLICY).unwrap();
        for order in 1..=3 {
            let want = &base.terms[order] * faer::Scale(lambda.powi(order as i32));
            let scale = max_abs(want.as_ref()).max(1e-12);
            prop_assert!(max_abs((&scaled.terms[order] - &want).as_ref()) <= 1e-10 * scale);
        }
        prop_assert_eq!(&scaled.terms[0], &base.terms[0]);
    }

    #[test]
    fn effective_hamiltonians_are_symmetric(eta in 0.0..=1.0f64, k in 1usize..=3) {
        let s = system(4, 3);
        let split = BlockSplit::two_level(s.basis());
        let eff = sw_order(&s.bare(), &s.interaction(eta, true).unwrap(), &split, k, POLICY).unwrap();
        prop_assert_eq!(rabigauge::linalg::asymmetry(eff.matrix.as_ref()), 0.0);
        let exact = sw_exact(&s.build_full(eta).unwrap(), &split).unwrap();
        prop_assert!(rabigauge::linalg::asymmetry(exact.matrix.as_ref()) == 0.0);
    }
}
