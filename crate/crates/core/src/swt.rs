//! Schrieffer–Wolff effective Hamiltonians on the two lowest qubit levels.
//!
//! With `P` the projector onto qubit levels `{0, 1}` (times the full Fock
//! space) and `H = H₀ + V`, the generator `S` is block off-diagonal and
//! anti-Hermitian; order by order
//! `[H₀, S₁] = −V_od` and `[H₀, S₂] = −[V_d, S₁]`, giving
//! `H₂ = ½[V_od, S₁]` and `H₃ = ½[V_od, S₂]` on the `P` block.

use std::fmt;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::basis::ProductBasis;
use crate::error::{Error, Result};
use crate::hamiltonian::{GaugeSystem, HermitianOperator};
use crate::linalg;

/// Model-space split `P ⊕ Q` of a product basis by qubit level.
#[derive(Debug, Clone)]
pub struct BlockSplit {
    pub model: Vec<usize>,
    pub complement: Vec<usize>,
    dim: usize,
    model_basis: ProductBasis,
}

impl BlockSplit {
    /// `P` spans the lowest `levels` qubit states.
    pub fn qubit_levels(basis: &ProductBasis, levels: usize) -> Self {
        let (model, complement) = (0..basis.dim()).partition(|&i| basis.labels()[i].qubit < levels);
        Self {
            model,
            complement,
            dim: basis.dim(),
            model_basis: basis.with_qubit_levels(levels.min(basis.qubit_levels())),
        }
    }

    /// The standard two-level split.
    pub fn two_level(basis: &ProductBasis) -> Self {
        Self::qubit_levels(basis, 2)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn model_basis(&self) -> &ProductBasis {
        &self.model_basis
    }

    /// Dense projector `P`.
    pub fn projector(&self) -> Mat<f64> {
        let mut p = Mat::zeros(self.dim, self.dim);
        for &i in &self.model {
            p[(i, i)] = 1.0;
        }
        p
    }
}

/// Perturbative order of an effective Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SwOrder {
    Finite(usize),
    Exact,
}

impl fmt::Display for SwOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwOrder::Finite(k) => write!(f, "{k}"),
            SwOrder::Exact => f.write_str("inf"),
        }
    }
}

/// Treatment of energy denominators smaller than a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DenominatorPolicy {
    /// Fail with [`Error::SmallDenominator`].
    Error { floor: f64 },
    /// Replace the denominator by `±floor`, keeping its sign.
    Regularize { floor: f64 },
}

impl DenominatorPolicy {
    pub fn floor(&self) -> f64 {
        match *self {
            DenominatorPolicy::Error { floor } | DenominatorPolicy::Regularize { floor } => floor,
        }
    }
}

/// Diagnostics raised while constructing an effective Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SwWarning {
    RegularizedDenominator { model: usize, complement: usize, value: f64 },
    AmbiguousAssignment { position: usize, gap: f64 },
    BandMixing { eigenvector: usize, overlap: f64 },
}

impl fmt::Display for SwWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwWarning::RegularizedDenominator { model, complement, value } => write!(
                f,
                "regularized denominator {value:.3e} between model state {model} and complement state {complement}"
            ),
            SwWarning::AmbiguousAssignment { position, gap } => write!(
                f,
                "ambiguous eigenvector assignment at model slot {position}: overlap gap {gap:.3e}"
            ),
            SwWarning::BandMixing { eigenvector, overlap } => write!(
                f,
                "band mixing: eigenvector {eigenvector} assigned with model-space overlap {overlap:.3e}"
            ),
        }
    }
}

/// `H_eff = Σ_j H_j` on the model space.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    pub order: SwOrder,
    /// `H_0 … H_K`; a single entry for the exact transformation.
    pub terms: Vec<Mat<f64>>,
    pub matrix: Mat<f64>,
    pub basis: ProductBasis,
    pub warnings: Vec<SwWarning>,
}

impl EffectiveHamiltonian {
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::eigvalsh(self.matrix.as_ref())
    }

    pub fn operator(&self) -> Result<HermitianOperator> {
        HermitianOperator::new(self.matrix.clone(), self.basis.clone())
    }
}

/// Energy denominators `E_p − E_q` after applying the policy.
fn denominators(
    e_p: &[f64],
    e_q: &[f64],
    split: &BlockSplit,
    policy: DenominatorPolicy,
    warnings: &mut Vec<SwWarning>,
) -> Result<Mat<f64>> {
    let floor = policy.floor();
    let mut den = Mat::zeros(e_p.len(), e_q.len());
    for (i, &ep) in e_p.iter().enumerate() {
        for (j, &eq) in e_q.iter().enumerate() {
            let mut d = ep - eq;
            if d.abs() < floor {
                let (model, complement) = (split.model[i], split.complement[j]);
                match policy {
                    DenominatorPolicy::Error { .. } => {
                        return Err(Error::SmallDenominator {
                            model,
                            complement,
                            value: d,
                        })
                    }
                    DenominatorPolicy::Regularize { .. } => {
                        log::debug!("regularizing denominator {d:.3e} between states {model} and {complement}");
                        warnings.push(SwWarning::RegularizedDenominator {
                            model,
                            complement,
                            value: d,
                        });
                        d = if d >= 0.0 { floor } else { -floor };
                    }
                }
            }
            den[(i, j)] = d;
        }
    }
    Ok(den)
}

/// `½(−A Bᵀ − B Aᵀ)`, i.e. `½[V_od, S]` on the model block for `A = V_PQ`,
/// `B = S_PQ`.
fn half_commutator(v_pq: &Mat<f64>, s_pq: &Mat<f64>) -> Mat<f64> {
    let prod = v_pq * s_pq.transpose();
    let n = prod.nrows();
    Mat::from_fn(n, n, |i, j| -0.5 * (prod[(i, j)] + prod[(j, i)]))
}

/// Perturbative SW effective Hamiltonian through order `k ∈ {1, 2, 3}`.
///
/// `h0` must be diagonal in the product basis and `v = H − h0`.
pub fn sw_order(
    h0: &HermitianOperator,
    v: &HermitianOperator,
    split: &BlockSplit,
    k: usize,
    policy: DenominatorPolicy,
) -> Result<EffectiveHamiltonian> {
    if !(1..=3).contains(&k) {
        return Err(Error::invalid("order", format!("perturbative order must be 1, 2 or 3, got {k}")));
    }
    if h0.basis != v.basis || h0.dim() != split.dim() {
        return Err(Error::BasisMismatch);
    }
    let off = h0.off_diagonal_weight();
    let scale = linalg::max_abs(h0.matrix.as_ref()).max(1.0);
    if off > 1e-12 * scale {
        return Err(Error::NotDiagonal(off));
    }
    let e = h0.diagonal();
    let e_p: Vec<f64> = split.model.iter().map(|&i| e[i]).collect();
    let e_q: Vec<f64> = split.complement.iter().map(|&i| e[i]).collect();
    let np = e_p.len();
    let vm = v.matrix.as_ref();

    let h_0 = Mat::from_fn(np, np, |i, j| if i == j { e_p[i] } else { 0.0 });
    let h_1 = linalg::select(vm, &split.model, &split.model);
    let mut terms = vec![h_0, h_1];
    let mut warnings = Vec::new();

    if k >= 2 && !split.complement.is_empty() {
        let v_pq = linalg::select(vm, &split.model, &split.complement);
        let den = denominators(&e_p, &e_q, split, policy, &mut warnings)?;
        let nq = e_q.len();
        let s1 = Mat::from_fn(np, nq, |i, j| -v_pq[(i, j)] / den[(i, j)]);
        terms.push(half_commutator(&v_pq, &s1));
        if k >= 3 {
            let v_qq = linalg::select(vm, &split.complement, &split.complement);
            let c = &terms[1] * &s1 - &s1 * &v_qq;
            let s2 = Mat::from_fn(np, nq, |i, j| -c[(i, j)] / den[(i, j)]);
            terms.push(half_commutator(&v_pq, &s2));
        }
    } else {
        for _ in 2..=k {
            terms.push(Mat::zeros(np, np));
        }
    }

    let mut matrix = Mat::zeros(np, np);
    for t in &terms {
        matrix += t;
    }
    linalg::symmetrize(&mut matrix);
    Ok(EffectiveHamiltonian {
        order: SwOrder::Finite(k),
        terms,
        matrix,
        basis: split.model_basis().clone(),
        warnings,
    })
}

/// Assigns `n_P` eigenvectors to the model space by descending overlap
/// `‖P v‖²`; ties go to the lower eigenvalue.
fn assign(vectors: &Mat<f64>, split: &BlockSplit) -> (Vec<usize>, Vec<f64>, Vec<SwWarning>) {
    let n = vectors.ncols();
    let overlaps: Vec<f64> = (0..n)
        .map(|j| split.model.iter().map(|&i| vectors[(i, j)].powi(2)).sum())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| overlaps[b].total_cmp(&overlaps[a]).then(a.cmp(&b)));
    let np = split.model.len();
    let mut warnings = Vec::new();
    if np < n {
        let gap = overlaps[order[np - 1]] - overlaps[order[np]];
        if gap < 1e-6 {
            warnings.push(SwWarning::AmbiguousAssignment { position: np - 1, gap });
        }
    }
    let mut picked: Vec<usize> = order[..np].to_vec();
    picked.sort_unstable();
    for &j in &picked {
        if overlaps[j] < 0.5 {
            warnings.push(SwWarning::BandMixing {
                eigenvector: j,
                overlap: overlaps[j],
            });
        }
    }
    let picked_overlaps = picked.iter().map(|&j| overlaps[j]).collect();
    (picked, picked_overlaps, warnings)
}

/// Exact SW transformation by direct rotation of the assigned exact
/// eigenspace onto the model space.
///
/// With `W = P V_assigned`, `P U P̃` restricted to the assigned vectors is the
/// orthogonal polar factor of `W`, so `H_eff = O Λ Oᵀ` with `O = polar(W)`.
pub fn sw_exact(h_full: &HermitianOperator, split: &BlockSplit) -> Result<EffectiveHamiltonian> {
    if h_full.dim() != split.dim() {
        return Err(Error::BasisMismatch);
    }
    let (values, vectors) = h_full.eigh()?;
    let (picked, _, warnings) = assign(&vectors, split);
    let w = Mat::from_fn(split.model.len(), picked.len(), |i, j| vectors[(split.model[i], picked[j])]);
    let (o, _) = linalg::polar_factor(w.as_ref())?;
    let lambda = Mat::from_fn(picked.len(), picked.len(), |i, j| if i == j { values[picked[i]] } else { 0.0 });
    let mut matrix = &o * &lambda * o.transpose();
    linalg::symmetrize(&mut matrix);
    Ok(EffectiveHamiltonian {
        order: SwOrder::Exact,
        terms: vec![matrix.clone()],
        matrix,
        basis: split.model_basis().clone(),
        warnings,
    })
}

/// Indices of the eigenvectors [`sw_exact`] assigns to the model space.
pub fn exact_assignment(vectors: &Mat<f64>, split: &BlockSplit) -> Vec<usize> {
    assign(vectors, split).0
}

/// Matrix norm used for `‖H₂‖`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// Sum of singular values.
    Nuclear,
    Frobenius,
    /// Largest singular value.
    Spectral,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::Nuclear, NormKind::Frobenius, NormKind::Spectral];

    pub fn name(&self) -> &'static str {
        match self {
            NormKind::Nuclear => "nuclear",
            NormKind::Frobenius => "frobenius",
            NormKind::Spectral => "spectral",
        }
    }

    pub fn apply(&self, m: &Mat<f64>) -> Result<f64> {
        Ok(match self {
            NormKind::Frobenius => m.norm_l2(),
            NormKind::Nuclear => linalg::singular_values(m.as_ref())?.iter().sum(),
            NormKind::Spectral => linalg::singular_values(m.as_ref())?.first().copied().unwrap_or(0.0),
        })
    }
}

/// `‖H₂(η)‖` restricted to model states with at most `photon_window` photons
/// in total (`None` keeps the whole model space).
pub fn h2_norm(
    system: &GaugeSystem,
    eta: f64,
    kind: NormKind,
    photon_window: Option<usize>,
    policy: DenominatorPolicy,
) -> Result<(f64, Vec<SwWarning>)> {
    let h0 = system.bare();
    let v = system.interaction(eta, true)?;
    let split = BlockSplit::two_level(system.basis());
    let eff = sw_order(&h0, &v, &split, 2, policy)?;
    let h2 = &eff.terms[2];
    let norm = match photon_window {
        None => kind.apply(h2)?,
        Some(w) => {
            let keep: Vec<usize> = eff
                .basis
                .labels()
                .iter()
                .enumerate()
                .filter(|(_, l)| l.total_photons() <= w)
                .map(|(i, _)| i)
                .collect();
            kind.apply(&linalg::select(h2.as_ref(), &keep, &keep))?
        }
    };
    Ok((norm, eff.warnings))
}
