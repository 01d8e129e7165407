//! Unit conventions.
//!
//! Energies and frequencies are expressed in GHz with ħ = 1, i.e. an energy
//! `E` is stored as `E / (ħ · 10⁹ s⁻¹)`, so a mode energy equals its angular
//! frequency `ω = 1/√(LC)` in units of 10⁹ rad/s. Capacitances are in fF,
//! inductances in nH and impedances in Ω.
//!
//! Operators use reduced variables: the qubit flux `φ̂ = 2π φ_q / φ₀` and the
//! Cooper-pair number `n̂ = Q_q / 2e`. All SI conversions live in this module.

/// Elementary charge (C).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Planck constant (J s).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J s).
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);
/// Superconducting flux quantum h/2e (Wb).
pub const FLUX_QUANTUM: f64 = PLANCK / (2.0 * ELEMENTARY_CHARGE);

const FEMTO: f64 = 1e-15;
const NANO: f64 = 1e-9;
const GIGA: f64 = 1e9;

/// Energy of one internal unit in joules.
pub const ENERGY_UNIT: f64 = HBAR * GIGA;

/// Charging energy `e²/2C` for a capacitance in fF.
pub fn charging_energy(capacitance_ff: f64) -> f64 {
    ELEMENTARY_CHARGE.powi(2) / (2.0 * capacitance_ff * FEMTO) / ENERGY_UNIT
}

/// Capacitance in fF whose charging energy is `e_c`.
pub fn capacitance_from_charging_energy(e_c: f64) -> f64 {
    ELEMENTARY_CHARGE.powi(2) / (2.0 * e_c * ENERGY_UNIT) / FEMTO
}

/// Inductive energy `(φ₀/2π)²/L` for an inductance in nH.
pub fn inductive_energy(inductance_nh: f64) -> f64 {
    reduced_flux_quantum().powi(2) / (inductance_nh * NANO) / ENERGY_UNIT
}

/// Inductance in nH whose inductive energy is `e_l`.
pub fn inductance_from_inductive_energy(e_l: f64) -> f64 {
    reduced_flux_quantum().powi(2) / (e_l * ENERGY_UNIT) / NANO
}

/// `1/√(LC)` in GHz (10⁹ rad/s).
pub fn lc_frequency(inductance_nh: f64, capacitance_ff: f64) -> f64 {
    1.0 / (inductance_nh * NANO * capacitance_ff * FEMTO).sqrt() / GIGA
}

/// `√(L/C)` in Ω.
pub fn lc_impedance(inductance_nh: f64, capacitance_ff: f64) -> f64 {
    (inductance_nh * NANO / (capacitance_ff * FEMTO)).sqrt()
}

/// `φ₀/2π` in Wb.
pub fn reduced_flux_quantum() -> f64 {
    FLUX_QUANTUM / (2.0 * std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_invert() {
        let c = 32.5;
        assert!((capacitance_from_charging_energy(charging_energy(c)) - c).abs() < 1e-12 * c);
        let l = 326.0;
        assert!((inductance_from_inductive_energy(inductive_energy(l)) - l).abs() < 1e-12 * l);
    }

    #[test]
    fn plasma_frequency_matches_lc() {
        // √(8 E_L E_C) is the LC frequency in ħ = 1 units
        let (l, c) = (12.0, 40.0);
        let w = (8.0 * inductive_energy(l) * charging_energy(c)).sqrt();
        assert!((w - lc_frequency(l, c)).abs() < 1e-12 * w);
    }

    #[test]
    fn magnitudes() {
        // e²/2C for 1 fF is ≈ 121.7 GHz·ħ
        assert!((charging_energy(1.0) - 121.7067).abs() < 1e-3);
        // (φ₀/2π)²/L for 1 nH is ≈ 1027 GHz·ħ
        assert!((inductive_energy(1.0) - 1027.059).abs() < 1e-2);
    }
}
