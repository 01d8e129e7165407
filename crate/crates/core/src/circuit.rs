//! Lumped-element circuit descriptions, the Foster mapping and the
//! Lagrangian-level gauge transformation.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::units;

/// One resonator branch of the physical circuit: a parallel LC tank attached
/// to the qubit node through a coupling capacitor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Resonator {
    /// `C_c` in fF.
    pub coupling_capacitance: f64,
    /// `C_r` in fF. Zero describes a bare coupling capacitor.
    pub capacitance: f64,
    /// `L_r` in nH.
    pub inductance: f64,
}

/// Fluxonium capacitively coupled to up to two resonators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalCircuit {
    /// `C_q` in fF.
    pub qubit_capacitance: f64,
    /// `L_q` in nH.
    pub qubit_inductance: f64,
    /// `E_J` in GHz.
    pub josephson_energy: f64,
    /// Reduced external flux in radians.
    pub external_flux: f64,
    pub resonators: Vec<Resonator>,
}

impl PhysicalCircuit {
    pub fn mode_count(&self) -> usize {
        self.resonators.len()
    }

    pub fn validate(&self) -> Result<()> {
        positive("qubit_capacitance", self.qubit_capacitance)?;
        positive("qubit_inductance", self.qubit_inductance)?;
        non_negative("josephson_energy", self.josephson_energy)?;
        finite("external_flux", self.external_flux)?;
        for r in &self.resonators {
            positive("coupling_capacitance", r.coupling_capacitance)?;
            non_negative("resonator capacitance", r.capacitance)?;
            positive("resonator inductance", r.inductance)?;
        }
        Ok(())
    }
}

/// A mode of the Foster form: a series LC branch from the qubit node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FosterMode {
    /// `C_k` in fF.
    pub capacitance: f64,
    /// `L_k` in nH.
    pub inductance: f64,
}

impl FosterMode {
    /// Builds a mode from its charging and inductive energies (GHz).
    pub fn from_energies(charging_energy: f64, inductive_energy: f64) -> Self {
        Self {
            capacitance: units::capacitance_from_charging_energy(charging_energy),
            inductance: units::inductance_from_inductive_energy(inductive_energy),
        }
    }

    /// `ω_k = 1/√(L_k C_k)` in GHz.
    pub fn frequency(&self) -> f64 {
        units::lc_frequency(self.inductance, self.capacitance)
    }

    /// `Z_k = √(L_k/C_k)` in Ω.
    pub fn impedance(&self) -> f64 {
        units::lc_impedance(self.inductance, self.capacitance)
    }

    pub fn charging_energy(&self) -> f64 {
        units::charging_energy(self.capacitance)
    }

    pub fn inductive_energy(&self) -> f64 {
        units::inductive_energy(self.inductance)
    }
}

/// Canonical Foster form: the qubit node with total capacitance `C_Σ` to
/// ground, shunted by `L_q`, the junction, and `N` series LC branches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FosterForm {
    /// `C_Σ = C_q + C_0` in fF.
    pub total_capacitance: f64,
    /// `C_0` in fF.
    pub ground_capacitance: f64,
    pub modes: Vec<FosterMode>,
    /// `L_q` in nH.
    pub qubit_inductance: f64,
    /// `E_J` in GHz.
    pub josephson_energy: f64,
    /// Reduced external flux in radians.
    pub external_flux: f64,
}

impl FosterForm {
    /// Foster form specified through qubit energies (GHz) and explicit modes.
    /// The ground capacitance is not separately identifiable and is set to zero.
    pub fn from_qubit_energies(
        e_j: f64,
        e_c: f64,
        e_l: f64,
        external_flux: f64,
        modes: Vec<FosterMode>,
    ) -> Result<Self> {
        positive("E_C", e_c)?;
        positive("E_L", e_l)?;
        let form = Self {
            total_capacitance: units::capacitance_from_charging_energy(e_c),
            ground_capacitance: 0.0,
            modes,
            qubit_inductance: units::inductance_from_inductive_energy(e_l),
            josephson_energy: e_j,
            external_flux,
        };
        form.validate()?;
        Ok(form)
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn qubit_capacitance(&self) -> f64 {
        self.total_capacitance - self.ground_capacitance
    }

    /// Qubit charging energy `e²/2C_Σ`.
    pub fn charging_energy(&self) -> f64 {
        units::charging_energy(self.total_capacitance)
    }

    /// Qubit inductive energy `(φ₀/2π)²/L_q`.
    pub fn inductive_energy(&self) -> f64 {
        units::inductive_energy(self.qubit_inductance)
    }

    pub fn validate(&self) -> Result<()> {
        positive("total_capacitance", self.total_capacitance)?;
        non_negative("ground_capacitance", self.ground_capacitance)?;
        if self.ground_capacitance >= self.total_capacitance {
            return Err(Error::invalid(
                "ground_capacitance",
                "must be smaller than the total capacitance",
            ));
        }
        positive("qubit_inductance", self.qubit_inductance)?;
        non_negative("josephson_energy", self.josephson_energy)?;
        finite("external_flux", self.external_flux)?;
        for m in &self.modes {
            positive("mode capacitance", m.capacitance)?;
            positive("mode inductance", m.inductance)?;
            let (w, z) = (m.frequency(), m.impedance());
            if !(w.is_finite() && w > 0.0 && z.is_finite() && z > 0.0) {
                return Err(Error::invalid("mode", "frequency and impedance must be finite"));
            }
        }
        Ok(())
    }

    /// Flux-gauge quadratic form of the Lagrangian, ordered (qubit, modes…).
    pub fn quadratic_form(&self) -> QuadraticForm {
        let n = self.modes.len() + 1;
        let mut capacitance = Mat::zeros(n, n);
        let mut inverse_inductance = Mat::zeros(n, n);
        capacitance[(0, 0)] = self.total_capacitance;
        inverse_inductance[(0, 0)] = 1.0 / self.qubit_inductance;
        for (k, m) in self.modes.iter().enumerate() {
            let inv_l = 1.0 / m.inductance;
            capacitance[(k + 1, k + 1)] = m.capacitance;
            inverse_inductance[(0, 0)] += inv_l;
            inverse_inductance[(k + 1, k + 1)] = inv_l;
            inverse_inductance[(0, k + 1)] = -inv_l;
            inverse_inductance[(k + 1, 0)] = -inv_l;
        }
        QuadraticForm {
            capacitance,
            inverse_inductance,
        }
    }
}

/// Maps the capacitively coupled circuit onto its Foster form.
///
/// Only one- and two-resonator circuits are supported, the latter with equal
/// coupling capacitors.
pub fn foster_map(circuit: &PhysicalCircuit) -> Result<FosterForm> {
    circuit.validate()?;
    let n = circuit.mode_count();
    if n > 2 {
        return Err(Error::UnsupportedModeCount(n));
    }
    if n == 2 {
        let (a, b) = (
            circuit.resonators[0].coupling_capacitance,
            circuit.resonators[1].coupling_capacitance,
        );
        if (a - b).abs() > 1e-12 * a.max(b) {
            return Err(Error::AsymmetricCoupling(a, b));
        }
    }
    let mut modes = Vec::with_capacity(n);
    let mut ground = 0.0;
    for r in &circuit.resonators {
        let cc = r.coupling_capacitance;
        let sum = cc + r.capacitance;
        modes.push(FosterMode {
            capacitance: cc * cc / sum,
            inductance: r.inductance * sum * sum / (cc * cc),
        });
        ground += cc * r.capacitance / sum;
    }
    let form = FosterForm {
        total_capacitance: circuit.qubit_capacitance + ground,
        ground_capacitance: ground,
        modes,
        qubit_inductance: circuit.qubit_inductance,
        josephson_energy: circuit.josephson_energy,
        external_flux: circuit.external_flux,
    };
    form.validate()?;
    Ok(form)
}

/// Capacitance matrix `C` (fF) and inverse inductance matrix `M` (1/nH) of a
/// quadratic Lagrangian, ordered (qubit, modes…).
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    pub capacitance: Mat<f64>,
    pub inverse_inductance: Mat<f64>,
}

impl QuadraticForm {
    pub fn dim(&self) -> usize {
        self.capacitance.nrows()
    }

    /// Congruence `(TᵀCT, TᵀMT)`.
    pub fn transformed(&self, t: &GaugeTransform) -> QuadraticForm {
        let tm = &t.matrix;
        QuadraticForm {
            capacitance: tm.transpose() * &self.capacitance * tm,
            inverse_inductance: tm.transpose() * &self.inverse_inductance * tm,
        }
    }

    /// Qubit-resonator coupling vectors `(c, m)`.
    pub fn coupling_vectors(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        (
            (1..n).map(|k| self.capacitance[(k, 0)]).collect(),
            (1..n).map(|k| self.inverse_inductance[(k, 0)]).collect(),
        )
    }

    /// Classical normal-mode frequencies (GHz, ascending) of the linearised
    /// Lagrangian, from `M v = ω² C v`.
    pub fn normal_mode_frequencies(&self) -> Result<Vec<f64>> {
        let c_inv_sqrt = linalg::spectral_map(self.capacitance.as_ref(), |x| 1.0 / x.sqrt())?;
        let mut reduced = &c_inv_sqrt * &self.inverse_inductance * &c_inv_sqrt;
        linalg::symmetrize(&mut reduced);
        let ref_freq = units::lc_frequency(1.0, 1.0);
        Ok(linalg::eigvalsh(reduced.as_ref())?
            .into_iter()
            .map(|l| ref_freq * l.max(0.0).sqrt())
            .collect())
    }
}

/// Coordinate change `φ = T φ′` with `T = [[1, 0], [t, 1]]`.
#[derive(Debug, Clone)]
pub struct GaugeTransform {
    pub eta: f64,
    pub t: Vec<f64>,
    pub matrix: Mat<f64>,
}

/// Gauge transformation interpolating between the flux gauge (`η = 0`, no
/// capacitive coupling) and the charge gauge (`η = 1`, no inductive coupling).
pub fn gauge_vector(eta: f64, foster: &FosterForm) -> Result<GaugeTransform> {
    gauge_vector_for(eta, &foster.quadratic_form())
}

/// [`gauge_vector`] for an arbitrary quadratic form with invertible resonator
/// blocks: `t = −[(1−η) C_r⁻¹ c + η M_r⁻¹ m]`.
pub fn gauge_vector_for(eta: f64, form: &QuadraticForm) -> Result<GaugeTransform> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::EtaOutOfRange(eta));
    }
    let n = form.dim() - 1;
    let (c, m) = form.coupling_vectors();
    let c_r = form.capacitance.submatrix(1, 1, n, n).to_owned();
    let m_r = form.inverse_inductance.submatrix(1, 1, n, n).to_owned();
    let a = solve(&c_r, &c)?;
    let b = solve(&m_r, &m)?;
    let t: Vec<f64> = (0..n).map(|k| -((1.0 - eta) * a[k] + eta * b[k])).collect();
    let mut matrix = Mat::<f64>::identity(n + 1, n + 1);
    for k in 0..n {
        matrix[(k + 1, 0)] = t[k];
    }
    Ok(GaugeTransform { eta, t, matrix })
}

/// True when no transformation of the gauge family removes both couplings,
/// i.e. the qubit cannot be decoupled from the environment.
pub fn no_decoupling_check(foster: &FosterForm) -> Result<bool> {
    no_decoupling_check_for(&foster.quadratic_form())
}

pub fn no_decoupling_check_for(form: &QuadraticForm) -> Result<bool> {
    let n = form.dim() - 1;
    let (c, m) = form.coupling_vectors();
    let c_r = form.capacitance.submatrix(1, 1, n, n).to_owned();
    let m_r = form.inverse_inductance.submatrix(1, 1, n, n).to_owned();
    let cr_inv_c = solve(&c_r, &c)?;
    let mr_inv_m = solve(&m_r, &m)?;
    let scale = c.iter().chain(&m).fold(0.0_f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return Ok(false);
    }
    let mut first = 0.0_f64;
    let mut second = 0.0_f64;
    for i in 0..n {
        let mut r1 = m[i];
        let mut r2 = c[i];
        for j in 0..n {
            r1 -= m_r[(i, j)] * cr_inv_c[j];
            r2 -= c_r[(i, j)] * mr_inv_m[j];
        }
        first = first.max(r1.abs());
        second = second.max(r2.abs());
    }
    let tol = 1e-12 * scale;
    Ok(!(first <= tol && second <= tol))
}

fn solve(a: &Mat<f64>, b: &[f64]) -> Result<Vec<f64>> {
    use faer::linalg::solvers::Solve;
    let n = b.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rhs = Mat::from_fn(n, 1, |i, _| b[i]);
    let x = a.partial_piv_lu().solve(&rhs);
    let out: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Linalg("singular resonator block".into()));
    }
    Ok(out)
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be positive and finite, got {v}")))
    }
}

fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be non-negative, got {v}")))
    }
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_mode(c_r: f64) -> PhysicalCircuit {
        PhysicalCircuit {
            qubit_capacitance: 20.0,
            qubit_inductance: 300.0,
            josephson_energy: 10.0,
            external_flux: std::f64::consts::PI,
            resonators: vec![Resonator {
                coupling_capacitance: 10.0,
                capacitance: c_r,
                inductance: 10.0,
            }],
        }
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs())
    }

    #[test]
    fn single_mode_mapping() {
        let f = foster_map(&one_mode(90.0)).unwrap();
        assert!(close(f.modes[0].capacitance, 1.0, 1e-14));
        assert!(close(f.modes[0].inductance, 1000.0, 1e-14));
        assert!(close(f.ground_capacitance, 9.0, 1e-14));
        assert_eq!(f.total_capacitance, 20.0 + f.ground_capacitance);
    }

    #[test]
    fn bare_coupling_capacitor_limit() {
        let f = foster_map(&one_mode(0.0)).unwrap();
        assert_eq!(f.modes[0].capacitance, 10.0);
        assert_eq!(f.modes[0].inductance, 10.0);
        assert_eq!(f.ground_capacitance, 0.0);
    }

    #[test]
    fn two_mode_ground_capacitance() {
        let mut c = one_mode(90.0);
        c.resonators.push(Resonator {
            coupling_capacitance: 10.0,
            capacitance: 90.0,
            inductance: 4.0,
        });
        let f = foster_map(&c).unwrap();
        assert!(close(f.ground_capacitance, 18.0, 1e-14));
    }

    #[test]
    fn rejects_asymmetric_and_large_circuits() {
        let mut c = one_mode(90.0);
        c.resonators.push(Resonator {
            coupling_capacitance: 11.0,
            capacitance: 90.0,
            inductance: 4.0,
        });
        assert!(matches!(foster_map(&c), Err(Error::AsymmetricCoupling(..))));
        c.resonators[1].coupling_capacitance = 10.0;
        c.resonators.push(c.resonators[1]);
        let err = foster_map(&c).unwrap_err();
        assert!(err.to_string().contains("mapping formula not provided for N>2"));
    }

    #[test]
    fn mapping_preserves_frequencies() {
        let mut c = one_mode(37.0);
        c.resonators.push(Resonator {
            coupling_capacitance: 10.0,
            capacitance: 5.5,
            inductance: 2.3,
        });
        let f = foster_map(&c).unwrap();
        for (r, m) in c.resonators.iter().zip(&f.modes) {
            let expected = units::lc_frequency(r.inductance, r.coupling_capacitance + r.capacitance);
            assert!(close(m.frequency(), expected, 1e-12));
        }
    }

    #[test]
    fn gauge_vector_endpoints() {
        let mut c = one_mode(90.0);
        c.resonators.push(Resonator {
            coupling_capacitance: 10.0,
            capacitance: 30.0,
            inductance: 3.0,
        });
        let f = foster_map(&c).unwrap();
        let form = f.quadratic_form();
        for &eta in &[0.0, 0.3, 1.0] {
            let t = gauge_vector(eta, &f).unwrap();
            for &tk in &t.t {
                assert!((tk - eta).abs() < 1e-14);
            }
        }
        let at0 = form.transformed(&gauge_vector(0.0, &f).unwrap());
        let at1 = form.transformed(&gauge_vector(1.0, &f).unwrap());
        let (c0, _) = at0.coupling_vectors();
        let (_, m1) = at1.coupling_vectors();
        let cs = linalg::max_abs(form.capacitance.as_ref());
        let ms = linalg::max_abs(form.inverse_inductance.as_ref());
        assert!(c0.iter().all(|v| v.abs() <= 1e-12 * cs));
        assert!(m1.iter().all(|v| v.abs() <= 1e-12 * ms));
    }

    #[test]
    fn eta_out_of_range() {
        let f = foster_map(&one_mode(90.0)).unwrap();
        assert!(matches!(gauge_vector(1.5, &f), Err(Error::EtaOutOfRange(_))));
        assert!(matches!(gauge_vector(-0.1, &f), Err(Error::EtaOutOfRange(_))));
    }

    #[test]
    fn normal_modes_are_gauge_invariant() {
        let mut c = one_mode(90.0);
        c.resonators.push(Resonator {
            coupling_capacitance: 10.0,
            capacitance: 30.0,
            inductance: 3.0,
        });
        let f = foster_map(&c).unwrap();
        let form = f.quadratic_form();
        let reference = form.normal_mode_frequencies().unwrap();
        for &eta in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let w = form
                .transformed(&gauge_vector(eta, &f).unwrap())
                .normal_mode_frequencies()
                .unwrap();
            for (a, b) in w.iter().zip(&reference) {
                assert!(close(*a, *b, 1e-10), "{a} vs {b} at eta={eta}");
            }
        }
    }

    #[test]
    fn decoupling_is_impossible_when_coupled() {
        let f = foster_map(&one_mode(90.0)).unwrap();
        assert!(no_decoupling_check(&f).unwrap());

        let mut form = f.quadratic_form();
        form.inverse_inductance[(0, 1)] = 0.0;
        form.inverse_inductance[(1, 0)] = 0.0;
        assert!(!no_decoupling_check_for(&form).unwrap());
    }
}
