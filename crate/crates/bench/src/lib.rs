//! Shared fixtures for the benchmarks.

use rabigauge::{foster_map, presets, solve_fluxonium, FluxoniumSpec, GaugeSystem, TruncationSettings};

/// The reference qubit with one resonator (`modes = 1`) or two resonators
/// around `ω̄ = 10.7 GHz` (`modes = 2`).
pub fn reference_system(modes: usize, qubit_levels: usize, cutoffs: Vec<usize>) -> GaugeSystem {
    let spec = presets::reference_qubit();
    let circuit = match modes {
        1 => presets::single_resonator(&spec, presets::REFERENCE_COUPLING_RATIO),
        _ => presets::two_resonators(&spec, presets::REFERENCE_COUPLING_RATIO, presets::REFERENCE_OMEGA_BAR),
    }
    .expect("reference circuit");
    let foster = foster_map(&circuit).expect("Foster form");
    let q = solve_fluxonium(&FluxoniumSpec::from_foster(&foster), 150, qubit_levels).expect("qubit");
    GaugeSystem::new(&q, &foster, &TruncationSettings::new(qubit_levels, cutoffs)).expect("system")
}
