//! Circuits of the reference study, derived from their target parameters.
//!
//! The qubit is the fluxonium `(E_J, E_C, E_L) = (12.5, 3.75, 0.5)` GHz at
//! half a flux quantum. The first resonator is tuned to `ω₁ = ω₁₀` with
//! `g^φ₁/ω₁ = 0.07`; the physical circuit uses `C_c = C_r1 = 2C₁`, which makes
//! `C₁` the Foster capacitance. The second resonator copies `C_c` and `C_r`,
//! so only `L_r2` sets `ω₂` and hence `ω̄`.

use std::f64::consts::PI;

use crate::circuit::{PhysicalCircuit, Resonator};
use crate::error::{Error, Result};
use crate::qubit::{solve_fluxonium, FluxoniumSpec, QubitEigensystem, DEFAULT_BASIS_SIZE, DEFAULT_KEPT_LEVELS};
use crate::units;

pub const REFERENCE_E_J: f64 = 12.5;
pub const REFERENCE_E_C: f64 = 3.75;
pub const REFERENCE_E_L: f64 = 0.5;
pub const REFERENCE_COUPLING_RATIO: f64 = 0.07;
pub const REFERENCE_OMEGA_BAR: f64 = 10.7;

pub fn reference_qubit() -> FluxoniumSpec {
    FluxoniumSpec::new(REFERENCE_E_J, REFERENCE_E_C, REFERENCE_E_L, PI)
}

/// Physical circuit with a single resonator at `ω₁ = ω₁₀` and
/// `|g^φ₁|/ω₁ = coupling_ratio`.
pub fn single_resonator(spec: &FluxoniumSpec, coupling_ratio: f64) -> Result<PhysicalCircuit> {
    let q = solve_fluxonium(spec, DEFAULT_BASIS_SIZE, DEFAULT_KEPT_LEVELS)?;
    let (c1, l1) = resonant_mode(&q, coupling_ratio)?;
    let total = units::capacitance_from_charging_energy(spec.e_c);
    let c_q = total - c1;
    if c_q <= 0.0 {
        return Err(Error::invalid("coupling_ratio", "coupling too strong for the qubit capacitance"));
    }
    Ok(PhysicalCircuit {
        qubit_capacitance: c_q,
        qubit_inductance: units::inductance_from_inductive_energy(spec.e_l),
        josephson_energy: spec.e_j,
        external_flux: spec.external_flux,
        resonators: vec![resonator(c1, l1)],
    })
}

/// Two-resonator circuit whose second mode is placed so that `ω̄` equals
/// `omega_bar`.
pub fn two_resonators(spec: &FluxoniumSpec, coupling_ratio: f64, omega_bar: f64) -> Result<PhysicalCircuit> {
    let q = solve_fluxonium(spec, DEFAULT_BASIS_SIZE, DEFAULT_KEPT_LEVELS)?;
    let (c1, l1) = resonant_mode(&q, coupling_ratio)?;
    let w1 = units::lc_frequency(l1, c1);
    let w2 = second_mode_frequency(w1, omega_bar)?;
    let mut circuit = two_resonator_family(spec, coupling_ratio)?;
    circuit.resonators[1].inductance = second_resonator_inductance(&circuit, w2);
    Ok(circuit)
}

/// Two-resonator circuit with the second resonator equal to the first; the
/// base of the `ω̄` sweep.
pub fn two_resonator_family(spec: &FluxoniumSpec, coupling_ratio: f64) -> Result<PhysicalCircuit> {
    let q = solve_fluxonium(spec, DEFAULT_BASIS_SIZE, DEFAULT_KEPT_LEVELS)?;
    let (c1, l1) = resonant_mode(&q, coupling_ratio)?;
    let total = units::capacitance_from_charging_energy(spec.e_c);
    let c_q = total - 2.0 * c1;
    if c_q <= 0.0 {
        return Err(Error::invalid("coupling_ratio", "coupling too strong for the qubit capacitance"));
    }
    Ok(PhysicalCircuit {
        qubit_capacitance: c_q,
        qubit_inductance: units::inductance_from_inductive_energy(spec.e_l),
        josephson_energy: spec.e_j,
        external_flux: spec.external_flux,
        resonators: vec![resonator(c1, l1), resonator(c1, l1)],
    })
}

/// `L_r2` (nH) giving the second resonator of `circuit` the frequency `omega`.
pub fn second_resonator_inductance(circuit: &PhysicalCircuit, omega: f64) -> f64 {
    let r = &circuit.resonators[1];
    let c = r.coupling_capacitance + r.capacitance;
    let reference = units::lc_frequency(1.0, 1.0);
    (reference / omega).powi(2) / c
}

/// Geometric ladder of `L_r2` values placing `ω₂` between the given bounds,
/// ordered by increasing `ω̄`.
pub fn sweep_inductances(circuit: &PhysicalCircuit, omega_min: f64, omega_max: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let t = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.0 };
            let w = omega_min * (omega_max / omega_min).powf(t);
            second_resonator_inductance(circuit, w)
        })
        .collect()
}

/// Foster `(C₁, L₁)` of a mode at `ω₁₀` with flux coupling `ratio · ω₁`.
fn resonant_mode(q: &QubitEigensystem, ratio: f64) -> Result<(f64, f64)> {
    if ratio.is_nan() || ratio <= 0.0 {
        return Err(Error::invalid("coupling_ratio", "must be positive"));
    }
    let w = q.transition(1, 0);
    // g = E_L x φ₁₀ with x = (2E_C/E_L)^{1/4} and ω = √(8E_L E_C) gives
    // g/ω = φ₁₀ √(E_L/2ω).
    let e_l = 2.0 * w * (ratio / q.flux[(1, 0)]).powi(2);
    let e_c = w * w / (8.0 * e_l);
    Ok((
        units::capacitance_from_charging_energy(e_c),
        units::inductance_from_inductive_energy(e_l),
    ))
}

/// Physical branch with Foster capacitance `c1` and inductance `l1`.
fn resonator(c1: f64, l1: f64) -> Resonator {
    Resonator {
        coupling_capacitance: 2.0 * c1,
        capacitance: 2.0 * c1,
        inductance: l1 / 4.0,
    }
}

/// Solves `ω̄(ω₂) = target` for equal mode capacitances, where
/// `p_k ∝ √ω_k` and `ω̄ = (ω₁^{3/2} + ω₂^{3/2}) / (ω₁^{1/2} + ω₂^{1/2})`.
fn second_mode_frequency(w1: f64, target: f64) -> Result<f64> {
    let mean = |w2: f64| (w1.powf(1.5) + w2.powf(1.5)) / (w1.sqrt() + w2.sqrt());
    if target <= w1 {
        return Err(Error::invalid("omega_bar", "target must exceed the first mode frequency"));
    }
    let (mut lo, mut hi) = (w1, 2.0 * target);
    while mean(hi) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ModeSummary;
    use crate::circuit::foster_map;

    #[test]
    fn single_resonator_targets() {
        let spec = reference_qubit();
        let f = foster_map(&single_resonator(&spec, 0.07).unwrap()).unwrap();
        assert!((f.charging_energy() - REFERENCE_E_C).abs() < 1e-12);
        let q = solve_fluxonium(&spec, 150, 12).unwrap();
        assert!((f.modes[0].frequency() - q.transition(1, 0)).abs() < 1e-12);
    }

    #[test]
    fn two_resonator_mean_frequency() {
        let spec = reference_qubit();
        let f = foster_map(&two_resonators(&spec, 0.07, REFERENCE_OMEGA_BAR).unwrap()).unwrap();
        let s = ModeSummary::from_foster(&f).unwrap();
        assert!((s.mean_frequency - REFERENCE_OMEGA_BAR).abs() < 1e-9);
        assert!((f.charging_energy() - REFERENCE_E_C).abs() < 1e-12);
        assert!((f.modes[0].capacitance - f.modes[1].capacitance).abs() < 1e-12);
    }

    #[test]
    fn sweep_ladder_is_monotone_in_omega_bar() {
        let spec = reference_qubit();
        let base = two_resonator_family(&spec, 0.07).unwrap();
        let ls = sweep_inductances(&base, 0.25, 17.0, 5);
        let mut last = 0.0;
        for l in ls {
            let mut c = base.clone();
            c.resonators[1].inductance = l;
            let w = ModeSummary::from_foster(&foster_map(&c).unwrap()).unwrap().mean_frequency;
            assert!(w > last);
            last = w;
        }
    }
}
