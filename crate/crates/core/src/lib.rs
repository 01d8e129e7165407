//! Optimal gauge for a fluxonium coupled to a multimode linear environment.
//!
//! The crate quantizes the circuit in a continuously parameterized gauge `η`,
//! assembles the full Hamiltonian and its two-level (Rabi) truncation,
//! computes Schrieffer–Wolff effective Hamiltonians and searches for the gauge
//! in which the truncated model reproduces the full spectrum best.

pub mod analysis;
pub mod basis;
pub mod circuit;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod presets;
pub mod qubit;
pub mod swt;
pub mod units;

pub use analysis::{
    f_ratio, f_ratio_from_couplings, optimize_eta, sigma_deviation, sweep_omega_bar, AutoCutoffs, Evaluation, GaugeStudy,
    ModeSummary, Objective, OptimizeResult, OptimizeSettings, StudySettings, SweepResult, SweepSettings,
};
pub use basis::{BasisLabel, ProductBasis, TruncationSettings};
pub use circuit::{foster_map, gauge_vector, no_decoupling_check, FosterForm, FosterMode, GaugeTransform, PhysicalCircuit, Resonator};
pub use error::{Error, Result};
pub use hamiltonian::{GaugeSystem, GaugeUnitary, HermitianOperator, InteractionCoefficients, ModeParameters, RabiCoupling};
pub use qubit::{charge_from_flux_check, coupling_operators, solve_fluxonium, CouplingOperators, FluxoniumSpec, QubitEigensystem};
pub use swt::{h2_norm, sw_exact, sw_order, BlockSplit, DenominatorPolicy, EffectiveHamiltonian, NormKind, SwOrder, SwWarning};
