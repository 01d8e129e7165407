//! Gauge-quality metrics and optimal-gauge searches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::TruncationSettings;
use crate::circuit::{foster_map, FosterForm, PhysicalCircuit};
use crate::error::{Error, Result};
use crate::hamiltonian::{GaugeSystem, ModeParameters};
use crate::qubit::{coupling_operators, solve_fluxonium, FluxoniumSpec, QubitEigensystem};
use crate::swt::{h2_norm, sw_exact, sw_order, BlockSplit, DenominatorPolicy, NormKind, SwWarning};
use crate::units;

/// Impedance-weighted summary of the environment modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSummary {
    /// `ω_k` in GHz.
    pub frequencies: Vec<f64>,
    /// `Z_k` in Ω.
    pub impedances: Vec<f64>,
    /// `p_k = Z_k^{−1/2} / Σ_l Z_l^{−1/2}`.
    pub weights: Vec<f64>,
    /// `ω̄ = Σ_k p_k ω_k`.
    pub mean_frequency: f64,
}

impl ModeSummary {
    pub fn new(frequencies: Vec<f64>, impedances: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() || frequencies.len() != impedances.len() {
            return Err(Error::invalid("modes", "need matching, non-empty frequency and impedance lists"));
        }
        let inv: Vec<f64> = impedances.iter().map(|z| 1.0 / z.sqrt()).collect();
        let total: f64 = inv.iter().sum();
        let weights: Vec<f64> = inv.iter().map(|v| v / total).collect();
        let mean_frequency = weights.iter().zip(&frequencies).map(|(p, w)| p * w).sum();
        Ok(Self {
            frequencies,
            impedances,
            weights,
            mean_frequency,
        })
    }

    pub fn from_foster(foster: &FosterForm) -> Result<Self> {
        Self::new(
            foster.modes.iter().map(|m| m.frequency()).collect(),
            foster.modes.iter().map(|m| m.impedance()).collect(),
        )
    }

    /// From reduced-unit mode data, using `Z_k = ħ x_k² / 2e²`.
    pub fn from_modes(modes: &[ModeParameters]) -> Result<Self> {
        let z0 = units::HBAR / (2.0 * units::ELEMENTARY_CHARGE.powi(2));
        Self::new(
            modes.iter().map(|m| m.frequency).collect(),
            modes.iter().map(|m| z0 * m.flux_zero_point.powi(2)).collect(),
        )
    }
}

/// `|f_nm| = ω̄ / ω_nm`.
pub fn f_ratio(n: usize, m: usize, eigsys: &QubitEigensystem, modes: &ModeSummary) -> Result<f64> {
    let w = transition_checked(n, m, eigsys)?;
    Ok(modes.mean_frequency / w)
}

/// `|Σ_k (G^φ_k)_nm| / |Σ_k (G^Q_k)_nm|` from the coupling operators.
pub fn f_ratio_from_couplings(n: usize, m: usize, eigsys: &QubitEigensystem, foster: &FosterForm) -> Result<f64> {
    transition_checked(n, m, eigsys)?;
    let mut flux = 0.0;
    let mut charge = 0.0;
    for k in 0..foster.mode_count() {
        let g = coupling_operators(eigsys, foster, k)?;
        flux += g.flux[(n, m)];
        charge += g.charge[(n, m)];
    }
    Ok((flux / charge).abs())
}

fn transition_checked(n: usize, m: usize, eigsys: &QubitEigensystem) -> Result<f64> {
    if n <= m || n >= eigsys.kept_levels() {
        return Err(Error::invalid("levels", format!("need m < n < {}, got n={n}, m={m}", eigsys.kept_levels())));
    }
    let w = eigsys.transition(n, m);
    if w <= 0.0 {
        return Err(Error::invalid("levels", "transition frequency must be positive"));
    }
    Ok(w)
}

/// `σ = [Σ_{i=0}^{M} (E_i − e_i)² / M]^{1/2}` with both spectra measured from
/// their ground state.
pub fn sigma_deviation(full: &[f64], effective: &[f64], levels: usize) -> Result<f64> {
    if levels == 0 {
        return Err(Error::invalid("levels", "M must be at least 1"));
    }
    let needed = levels + 1;
    for got in [full.len(), effective.len()] {
        if got < needed {
            return Err(Error::SpectrumLength { needed, got });
        }
    }
    let sum: f64 = (0..needed)
        .map(|i| ((full[i] - full[0]) - (effective[i] - effective[0])).powi(2))
        .sum();
    Ok((sum / levels as f64).sqrt())
}

/// One objective evaluation with the diagnostics it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub warnings: Vec<SwWarning>,
}

impl From<f64> for Evaluation {
    fn from(value: f64) -> Self {
        Self {
            value,
            warnings: Vec::new(),
        }
    }
}

/// Minimum number of coarse grid points accepted by [`optimize_eta`].
pub const MIN_GRID_POINTS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSettings {
    pub grid_points: usize,
    pub refine: bool,
    /// Golden-section stopping width in `η`.
    pub tolerance: f64,
}

impl Default for OptimizeSettings {
    fn default() -> Self {
        Self {
            grid_points: 41,
            refine: true,
            tolerance: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFailure {
    pub eta: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub eta_opt: f64,
    pub value: f64,
    /// Index of the coarse-grid minimum.
    pub grid_argmin: usize,
    pub grid: Vec<f64>,
    /// Objective on the grid; `None` where the evaluation failed.
    pub curve: Vec<Option<f64>>,
    pub failures: Vec<GridFailure>,
    /// Diagnostics tagged with the `η` that produced them.
    pub warnings: Vec<(f64, SwWarning)>,
}

/// Uniform grid of `points` values on `[0, 1]`.
pub fn eta_grid(points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.0];
    }
    (0..points).map(|i| i as f64 / (points - 1) as f64).collect()
}

/// Minimizes `objective` over `η ∈ [0, 1]`: a coarse grid scan followed by an
/// optional golden-section refinement between the neighbours of the grid
/// minimum. Ties resolve toward smaller `η`.
pub fn optimize_eta<F>(objective: F, settings: &OptimizeSettings) -> Result<OptimizeResult>
where
    F: Fn(f64) -> Result<Evaluation> + Sync,
{
    if settings.grid_points < MIN_GRID_POINTS {
        return Err(Error::GridTooCoarse {
            min: MIN_GRID_POINTS,
            got: settings.grid_points,
        });
    }
    let grid = eta_grid(settings.grid_points);
    let evaluations: Vec<Result<Evaluation>> = grid.par_iter().map(|&eta| objective(eta)).collect();

    let mut curve = Vec::with_capacity(grid.len());
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    for (&eta, ev) in grid.iter().zip(evaluations) {
        match ev {
            Ok(ev) if ev.value.is_finite() => {
                warnings.extend(ev.warnings.into_iter().map(|w| (eta, w)));
                curve.push(Some(ev.value));
            }
            Ok(ev) => {
                failures.push(GridFailure {
                    eta,
                    message: format!("non-finite objective {}", ev.value),
                });
                curve.push(None);
            }
            Err(e) => {
                failures.push(GridFailure {
                    eta,
                    message: e.to_string(),
                });
                curve.push(None);
            }
        }
    }
    let grid_argmin = argmin(&curve).ok_or(Error::NoValidPoints)?;
    let mut best = (grid[grid_argmin], curve[grid_argmin].unwrap_or(f64::INFINITY));

    if settings.refine {
        let lo = grid[grid_argmin.saturating_sub(1)];
        let hi = grid[(grid_argmin + 1).min(grid.len() - 1)];
        let mut eval = |eta: f64| -> f64 {
            match objective(eta) {
                Ok(ev) if ev.value.is_finite() => {
                    warnings.extend(ev.warnings.into_iter().map(|w| (eta, w)));
                    ev.value
                }
                Ok(ev) => {
                    failures.push(GridFailure {
                        eta,
                        message: format!("non-finite objective {}", ev.value),
                    });
                    f64::INFINITY
                }
                Err(e) => {
                    failures.push(GridFailure {
                        eta,
                        message: e.to_string(),
                    });
                    f64::INFINITY
                }
            }
        };
        let candidate = golden_section(&mut eval, lo, hi, settings.tolerance);
        if candidate.1 < best.1 || (candidate.1 == best.1 && candidate.0 < best.0) {
            best = candidate;
        }
    }
    Ok(OptimizeResult {
        eta_opt: best.0,
        value: best.1,
        grid_argmin,
        grid,
        curve,
        failures,
        warnings,
    })
}

/// Index of the smallest entry; the first one wins ties.
pub fn argmin(values: &[Option<f64>]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.iter().enumerate() {
        if let Some(v) = *v {
            if best.map_or(true, |(_, b)| v < b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

/// Golden-section search on `[a, b]`; returns the best evaluated interior
/// point as `(x, f(x))`.
fn golden_section(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fd < fc { (d, fd) } else { (c, fc) };
    while (b - a) > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        for (x, v) in [(c, fc), (d, fd)] {
            if v < best.1 || (v == best.1 && x < best.0) {
                best = (x, v);
            }
        }
    }
    best
}

/// Settings shared by the `σ` and `‖H₂‖` objectives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudySettings {
    /// Number of levels `M` in `σ`.
    pub levels: usize,
    pub norm: NormKind,
    /// Total-photon window for `‖H₂‖`; `None` keeps the whole model space.
    pub photon_window: Option<usize>,
    pub policy: DenominatorPolicy,
    /// Include the diamagnetic terms in the Rabi model used for `σ`.
    pub qrm_diamagnetic: bool,
    /// Gauge at which the full reference spectrum is computed.
    pub reference_eta: f64,
}

impl StudySettings {
    /// Defaults with the denominator floor tied to the qubit frequency.
    pub fn for_qubit(omega_10: f64) -> Self {
        Self {
            levels: 15,
            norm: NormKind::Nuclear,
            photon_window: None,
            policy: DenominatorPolicy::Regularize { floor: 1e-3 * omega_10 },
            qrm_diamagnetic: true,
            reference_eta: 0.0,
        }
    }
}

/// Objective to minimize over `η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    H2Norm,
    Sigma,
}

/// A gauge system together with its full reference spectrum.
#[derive(Debug, Clone)]
pub struct GaugeStudy {
    pub system: GaugeSystem,
    pub settings: StudySettings,
    /// Lowest `M + 1` eigenvalues of the full Hamiltonian at the reference gauge.
    pub reference: Vec<f64>,
}

impl GaugeStudy {
    pub fn new(system: GaugeSystem, settings: StudySettings) -> Result<Self> {
        let full = system.build_full(settings.reference_eta)?.eigenvalues()?;
        let needed = settings.levels + 1;
        if full.len() < needed {
            return Err(Error::SpectrumLength {
                needed,
                got: full.len(),
            });
        }
        Ok(Self {
            system,
            settings,
            reference: full[..needed].to_vec(),
        })
    }

    /// `(E_M − E_0)/M` of the reference spectrum.
    pub fn mean_spacing(&self) -> f64 {
        let m = self.settings.levels;
        (self.reference[m] - self.reference[0]) / m as f64
    }

    /// `σ` of the Rabi model against the reference spectrum.
    pub fn sigma(&self, eta: f64) -> Result<f64> {
        let qrm = self.system.build_qrm(eta, self.settings.qrm_diamagnetic)?.eigenvalues()?;
        sigma_deviation(&self.reference, &qrm, self.settings.levels)
    }

    pub fn h2(&self, eta: f64) -> Result<Evaluation> {
        let (value, warnings) = h2_norm(
            &self.system,
            eta,
            self.settings.norm,
            self.settings.photon_window,
            self.settings.policy,
        )?;
        Ok(Evaluation { value, warnings })
    }

    pub fn evaluate(&self, objective: Objective, eta: f64) -> Result<Evaluation> {
        match objective {
            Objective::H2Norm => self.h2(eta),
            Objective::Sigma => self.sigma(eta).map(Evaluation::from),
        }
    }

    pub fn optimize(&self, objective: Objective, settings: &OptimizeSettings) -> Result<OptimizeResult> {
        optimize_eta(|eta| self.evaluate(objective, eta), settings)
    }

    /// `σ` of the SW effective Hamiltonians of the given orders (`None` for
    /// the exact transformation) against the spectrum of `H(η)` itself.
    pub fn sigma_orders(&self, eta: f64, orders: &[Option<usize>]) -> Result<(Vec<f64>, Vec<SwWarning>)> {
        let full = self.system.build_full(eta)?;
        let reference = full.eigenvalues()?;
        let h0 = self.system.bare();
        let v = self.system.interaction(eta, true)?;
        let split = BlockSplit::two_level(self.system.basis());
        let mut out = Vec::with_capacity(orders.len());
        let mut warnings = Vec::new();
        for order in orders {
            let eff = match order {
                Some(k) => sw_order(&h0, &v, &split, *k, self.settings.policy)?,
                None => sw_exact(&full, &split)?,
            };
            out.push(sigma_deviation(&reference, &eff.eigenvalues()?, self.settings.levels)?);
            warnings.extend(eff.warnings);
        }
        Ok((out, warnings))
    }
}

/// Per-mode photon cutoff `clamp(⌈window/ω_k⌉ + pad, min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutoCutoffs {
    /// Energy window in GHz.
    pub window: f64,
    pub pad: usize,
    pub min: usize,
    pub max: usize,
}

impl Default for AutoCutoffs {
    fn default() -> Self {
        Self {
            window: 5.0,
            pad: 2,
            min: 2,
            max: 16,
        }
    }
}

impl AutoCutoffs {
    pub fn cutoffs(&self, frequencies: &[f64]) -> Vec<usize> {
        frequencies
            .iter()
            .map(|w| {
                let c = (self.window / w).ceil();
                let c = if c.is_finite() { c as usize } else { self.max };
                (c + self.pad).clamp(self.min, self.max)
            })
            .collect()
    }
}

/// Settings of the `ω̄` sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSettings {
    pub eta_points: usize,
    pub qubit_levels: usize,
    pub basis_size: usize,
    pub cutoffs: AutoCutoffs,
    pub dimension_budget: usize,
    pub study: StudySettings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub l_r2: f64,
    pub eta: Option<f64>,
    pub message: String,
}

/// `σ` and `‖H₂‖` over the `(L_r2, η)` grid. Rows follow the `L_r2` axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub eta: Vec<f64>,
    pub l_r2: Vec<f64>,
    pub omega_bar: Vec<f64>,
    pub omega_2: Vec<f64>,
    pub photon_cutoffs: Vec<Vec<usize>>,
    /// `(E_M − E_0)/M` of the full reference spectrum.
    pub mean_spacing: Vec<f64>,
    pub sigma: Vec<Vec<Option<f64>>>,
    pub h2_norm: Vec<Vec<Option<f64>>>,
    pub eta_sigma: Vec<Option<f64>>,
    pub eta_star: Vec<Option<f64>>,
    pub levels: usize,
    pub failures: Vec<SweepFailure>,
    pub warnings: Vec<String>,
}

struct Column {
    omega_bar: f64,
    omega_2: f64,
    cutoffs: Vec<usize>,
    mean_spacing: f64,
    sigma: Vec<Option<f64>>,
    h2: Vec<Option<f64>>,
    failures: Vec<SweepFailure>,
    warnings: Vec<String>,
}

/// Sweeps the second-resonator inductance of a two-resonator circuit and
/// evaluates `σ(η)` and `‖H₂(η)‖` for each resulting `ω̄`.
pub fn sweep_omega_bar(base: &PhysicalCircuit, l_r2: &[f64], settings: &SweepSettings) -> Result<SweepResult> {
    if base.mode_count() != 2 {
        return Err(Error::invalid("circuit", "the ω̄ sweep needs a two-resonator circuit"));
    }
    if settings.eta_points < 2 {
        return Err(Error::GridTooCoarse {
            min: 2,
            got: settings.eta_points,
        });
    }
    let eta = eta_grid(settings.eta_points);
    let foster0 = foster_map(base)?;
    let spec = FluxoniumSpec::from_foster(&foster0);
    let eigsys = solve_fluxonium(&spec, settings.basis_size, settings.qubit_levels)?;

    let columns: Vec<Column> = l_r2
        .par_iter()
        .map(|&l| sweep_column(base, l, &eta, &eigsys, settings))
        .collect();

    let mut out = SweepResult {
        eta: eta.clone(),
        l_r2: l_r2.to_vec(),
        omega_bar: Vec::new(),
        omega_2: Vec::new(),
        photon_cutoffs: Vec::new(),
        mean_spacing: Vec::new(),
        sigma: Vec::new(),
        h2_norm: Vec::new(),
        eta_sigma: Vec::new(),
        eta_star: Vec::new(),
        levels: settings.study.levels,
        failures: Vec::new(),
        warnings: Vec::new(),
    };
    for c in columns {
        out.omega_bar.push(c.omega_bar);
        out.omega_2.push(c.omega_2);
        out.photon_cutoffs.push(c.cutoffs);
        out.mean_spacing.push(c.mean_spacing);
        out.eta_sigma.push(argmin(&c.sigma).map(|i| eta[i]));
        out.eta_star.push(argmin(&c.h2).map(|i| eta[i]));
        out.sigma.push(c.sigma);
        out.h2_norm.push(c.h2);
        out.failures.extend(c.failures);
        out.warnings.extend(c.warnings);
    }
    Ok(out)
}

fn sweep_column(
    base: &PhysicalCircuit,
    l: f64,
    eta: &[f64],
    eigsys: &QubitEigensystem,
    settings: &SweepSettings,
) -> Column {
    let mut column = Column {
        omega_bar: f64::NAN,
        omega_2: f64::NAN,
        cutoffs: Vec::new(),
        mean_spacing: f64::NAN,
        sigma: vec![None; eta.len()],
        h2: vec![None; eta.len()],
        failures: Vec::new(),
        warnings: Vec::new(),
    };
    let fail = |column: &mut Column, eta: Option<f64>, e: Error| {
        log::warn!("sweep point L_r2 = {l} nH, eta = {eta:?} failed: {e}");
        column.failures.push(SweepFailure {
            l_r2: l,
            eta,
            message: e.to_string(),
        })
    };
    let mut circuit = base.clone();
    circuit.resonators[1].inductance = l;
    let foster = match foster_map(&circuit) {
        Ok(f) => f,
        Err(e) => {
            fail(&mut column, None, e);
            return column;
        }
    };
    let summary = match ModeSummary::from_foster(&foster) {
        Ok(s) => s,
        Err(e) => {
            fail(&mut column, None, e);
            return column;
        }
    };
    column.omega_bar = summary.mean_frequency;
    column.omega_2 = summary.frequencies[1];
    column.cutoffs = settings.cutoffs.cutoffs(&summary.frequencies);
    let mut trunc = TruncationSettings::new(settings.qubit_levels, column.cutoffs.clone());
    trunc.dimension_budget = settings.dimension_budget;
    let study = match GaugeSystem::new(eigsys, &foster, &trunc).and_then(|s| GaugeStudy::new(s, settings.study)) {
        Ok(s) => s,
        Err(e) => {
            fail(&mut column, None, e);
            return column;
        }
    };
    column.mean_spacing = study.mean_spacing();
    for (i, &x) in eta.iter().enumerate() {
        match study.sigma(x) {
            Ok(v) => column.sigma[i] = Some(v),
            Err(e) => fail(&mut column, Some(x), e),
        }
        match study.h2(x) {
            Ok(ev) => {
                column.h2[i] = Some(ev.value);
                column
                    .warnings
                    .extend(ev.warnings.iter().map(|w| format!("L_r2={l} eta={x}: {w}")));
            }
            Err(e) => fail(&mut column, Some(x), e),
        }
    }
    column
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        let a = [1.0, 2.0, 3.5, 4.0];
        assert_eq!(sigma_deviation(&a, &a, 3).unwrap(), 0.0);
        let shifted: Vec<f64> = a.iter().map(|x| x + 7.25).collect();
        assert!(sigma_deviation(&a, &shifted, 3).unwrap() < 1e-15);
        let mut one = a;
        one[2] += 0.3;
        assert!((sigma_deviation(&a, &one, 3).unwrap() - 0.3 / 3f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            sigma_deviation(&a, &a[..2], 3),
            Err(Error::SpectrumLength { .. })
        ));
    }

    #[test]
    fn equal_impedances_give_plain_mean() {
        let s = ModeSummary::new(vec![2.0, 5.0], vec![50.0, 50.0]).unwrap();
        assert!((s.mean_frequency - 3.5).abs() < 1e-15);
        assert!((s.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_too_coarse() {
        let settings = OptimizeSettings {
            grid_points: 1,
            ..Default::default()
        };
        let err = optimize_eta(|x| Ok(Evaluation::from(x)), &settings).unwrap_err();
        assert!(err.to_string().contains("grid too coarse"));
    }

    #[test]
    fn refines_interior_minimum() {
        let settings = OptimizeSettings::default();
        let r = optimize_eta(|x| Ok(Evaluation::from((x - 0.3137).powi(2))), &settings).unwrap();
        assert!((r.eta_opt - 0.3137).abs() < 1e-3);
        assert_eq!(r.grid[r.grid_argmin], 0.325);
    }

    #[test]
    fn boundary_minimum_and_ties() {
        let settings = OptimizeSettings::default();
        let r = optimize_eta(|x| Ok(Evaluation::from(x)), &settings).unwrap();
        assert_eq!(r.eta_opt, 0.0);
        let flat = optimize_eta(|_| Ok(Evaluation::from(1.0)), &settings).unwrap();
        assert_eq!(flat.eta_opt, 0.0);
    }

    #[test]
    fn failed_points_are_recorded() {
        let settings = OptimizeSettings {
            grid_points: 11,
            refine: false,
            tolerance: 1e-3,
        };
        let r = optimize_eta(
            |x| {
                if x < 0.25 {
                    Err(Error::NoValidPoints)
                } else {
                    Ok(Evaluation::from(x))
                }
            },
            &settings,
        )
        .unwrap();
        assert_eq!(r.failures.len(), 3);
        assert_eq!(r.curve[0], None);
        assert!((r.eta_opt - 0.3).abs() < 1e-15);
        assert!(matches!(
            optimize_eta(|_| Err(Error::NoValidPoints), &settings),
            Err(Error::NoValidPoints)
        ));
    }

    #[test]
    fn auto_cutoffs_clamp() {
        let a = AutoCutoffs::default();
        assert_eq!(a.cutoffs(&[0.5, 20.0, 0.01]), vec![12, 3, 16]);
    }
}
