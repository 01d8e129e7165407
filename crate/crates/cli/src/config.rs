//! Declarative run configuration.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rabigauge::analysis::StudySettings;
use rabigauge::{
    foster_map, presets, AutoCutoffs, DenominatorPolicy, FluxoniumSpec, FosterForm, FosterMode, NormKind,
    OptimizeSettings, PhysicalCircuit, Resonator,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub qubit: QubitConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitConfig>,
    #[serde(default)]
    pub truncation: TruncationConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub criterion: CriterionConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Fluxonium energies in GHz.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitConfig {
    pub e_j: f64,
    pub e_c: f64,
    pub e_l: f64,
    #[serde(default = "default_flux")]
    pub external_flux: f64,
}

fn default_flux() -> f64 {
    PI
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum CircuitConfig {
    /// Resonators derived from the qubit: the first
    /// at `ω₁₀` with flux coupling `coupling_ratio · ω₁`, the second (when
    /// `modes = 2`) placed so that the impedance-weighted mean is `omega_bar`.
    Tuned {
        #[serde(default = "default_modes")]
        modes: usize,
        #[serde(default = "default_ratio")]
        coupling_ratio: f64,
        #[serde(default = "default_omega_bar")]
        omega_bar: f64,
    },
    /// Explicit Foster modes; the qubit section supplies `C_Σ` and `L_q`.
    Foster { modes: Vec<FosterMode> },
    /// Lumped circuit; `E_C` and `E_L` of the qubit section must agree with it.
    Physical {
        qubit_capacitance: f64,
        qubit_inductance: f64,
        resonators: Vec<Resonator>,
    },
}

fn default_modes() -> usize {
    1
}

fn default_ratio() -> f64 {
    presets::REFERENCE_COUPLING_RATIO
}

fn default_omega_bar() -> f64 {
    presets::REFERENCE_OMEGA_BAR
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TruncationConfig {
    pub qubit_levels: usize,
    pub basis_size: usize,
    /// Per-mode photon cutoffs; chosen from the mode frequencies when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub photon_cutoffs: Option<Vec<usize>>,
    pub dimension_budget: usize,
    pub cutoff_window: f64,
    pub cutoff_pad: usize,
    pub cutoff_min: usize,
    pub cutoff_max: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        let auto = AutoCutoffs::default();
        Self {
            qubit_levels: 12,
            basis_size: 150,
            photon_cutoffs: None,
            dimension_budget: 6000,
            cutoff_window: auto.window,
            cutoff_pad: auto.pad,
            cutoff_min: auto.min,
            cutoff_max: auto.max,
        }
    }
}

impl TruncationConfig {
    pub fn auto_cutoffs(&self) -> AutoCutoffs {
        AutoCutoffs {
            window: self.cutoff_window,
            pad: self.cutoff_pad,
            min: self.cutoff_min,
            max: self.cutoff_max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    Regularize,
    Error,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub eta_points: usize,
    pub refine: bool,
    pub tolerance: f64,
    /// `M` in `σ`.
    pub levels: usize,
    pub norm: NormKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub photon_window: Option<usize>,
    pub denominator_policy: PolicyKind,
    /// Defaults to `1e-3 · ω₁₀`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator_floor: Option<f64>,
    pub qrm_diamagnetic: bool,
    pub reference_eta: f64,
    pub sw_orders: Vec<usize>,
    pub sw_exact: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            eta_points: 41,
            refine: true,
            tolerance: 1e-3,
            levels: 15,
            norm: NormKind::Nuclear,
            photon_window: None,
            denominator_policy: PolicyKind::Regularize,
            denominator_floor: None,
            qrm_diamagnetic: true,
            reference_eta: 0.0,
            sw_orders: vec![1, 2, 3],
            sw_exact: true,
        }
    }
}

impl AnalysisConfig {
    pub fn optimize_settings(&self) -> OptimizeSettings {
        OptimizeSettings {
            grid_points: self.eta_points,
            refine: self.refine,
            tolerance: self.tolerance,
        }
    }

    pub fn study_settings(&self, omega_10: f64) -> StudySettings {
        let floor = self.denominator_floor.unwrap_or(1e-3 * omega_10);
        StudySettings {
            levels: self.levels,
            norm: self.norm,
            photon_window: self.photon_window,
            policy: match self.denominator_policy {
                PolicyKind::Regularize => DenominatorPolicy::Regularize { floor },
                PolicyKind::Error => DenominatorPolicy::Error { floor },
            },
            qrm_diamagnetic: self.qrm_diamagnetic,
            reference_eta: self.reference_eta,
        }
    }
}

/// Second-resonator frequency axis of the `ω̄` sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    pub eta_points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            omega_min: 0.25,
            omega_max: 17.0,
            points: 12,
            eta_points: 15,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CriterionConfig {
    /// `(n, m)` pairs with `n > m`.
    pub transitions: Vec<[usize; 2]>,
    /// Also tabulate the couplings along the sweep axis.
    pub along_sweep: bool,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        Self {
            transitions: vec![[1, 0], [2, 1], [2, 0]],
            along_sweep: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<Format>,
    /// Worker threads; all available cores when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            formats: vec![Format::Csv, Format::Json],
            threads: None,
        }
    }
}

impl RunConfig {
    /// Reads `path`, applies `section.key=value` overrides and validates the
    /// result against the schema.
    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut table: toml::Table =
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let merged = toml::to_string(&table).map_err(|e| CliError::Config(e.to_string()))?;
        let config: RunConfig = toml::from_str(&merged).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        let q = &self.qubit;
        for (name, v) in [("qubit.e_c", q.e_c), ("qubit.e_l", q.e_l)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(q.e_j.is_finite() && q.e_j >= 0.0) {
            return bad(format!("qubit.e_j must be non-negative, got {}", q.e_j));
        }
        if !q.external_flux.is_finite() {
            return bad("qubit.external_flux must be finite".into());
        }
        let a = &self.analysis;
        if a.eta_points == 0 {
            return bad("analysis.eta_points must be at least 1".into());
        }
        if a.levels == 0 {
            return bad("analysis.levels must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&a.reference_eta) {
            return bad(format!("analysis.reference_eta must lie in [0, 1], got {}", a.reference_eta));
        }
        if let Some(&k) = a.sw_orders.iter().find(|k| !(1..=3).contains(*k)) {
            return bad(format!("analysis.sw_orders entries must be 1, 2 or 3, got {k}"));
        }
        if let Some(f) = a.denominator_floor {
            if !(f.is_finite() && f > 0.0) {
                return bad(format!("analysis.denominator_floor must be positive, got {f}"));
            }
        }
        let s = &self.sweep;
        if !(s.omega_min > 0.0 && s.omega_max > s.omega_min) {
            return bad("sweep.omega_min must be positive and below sweep.omega_max".into());
        }
        if s.points == 0 {
            return bad("sweep.points must be at least 1".into());
        }
        if let Some(&[n, m]) = self.criterion.transitions.iter().find(|[n, m]| n <= m) {
            return bad(format!("criterion.transitions needs n > m, got [{n}, {m}]"));
        }
        if self.output.threads == Some(0) {
            return bad("output.threads must be at least 1".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form of the resolved configuration. The
    /// `[output]` section does not influence results and is left out.
    pub fn hash(&self) -> String {
        let mut value = serde_json::to_value(self).expect("configuration serializes");
        value.as_object_mut().expect("table").remove("output");
        let json = value.to_string();
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn spec(&self) -> FluxoniumSpec {
        FluxoniumSpec::new(self.qubit.e_j, self.qubit.e_c, self.qubit.e_l, self.qubit.external_flux)
    }

    pub fn circuit(&self, command: &str) -> Result<&CircuitConfig, CliError> {
        self.circuit
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("section [circuit] is required by `{command}`")))
    }

    /// Foster form of the configured circuit and, where one exists, the
    /// lumped circuit it came from.
    pub fn resolve(&self, command: &str) -> Result<(FosterForm, Option<PhysicalCircuit>), CliError> {
        let spec = self.spec();
        match self.circuit(command)? {
            CircuitConfig::Tuned {
                modes,
                coupling_ratio,
                omega_bar,
            } => {
                let circuit = match modes {
                    1 => presets::single_resonator(&spec, *coupling_ratio)?,
                    2 => presets::two_resonators(&spec, *coupling_ratio, *omega_bar)?,
                    n => return Err(CliError::Config(format!("circuit.modes must be 1 or 2, got {n}"))),
                };
                Ok((foster_map(&circuit)?, Some(circuit)))
            }
            CircuitConfig::Foster { modes } => Ok((
                FosterForm::from_qubit_energies(spec.e_j, spec.e_c, spec.e_l, spec.external_flux, modes.clone())?,
                None,
            )),
            CircuitConfig::Physical {
                qubit_capacitance,
                qubit_inductance,
                resonators,
            } => {
                let circuit = PhysicalCircuit {
                    qubit_capacitance: *qubit_capacitance,
                    qubit_inductance: *qubit_inductance,
                    josephson_energy: spec.e_j,
                    external_flux: spec.external_flux,
                    resonators: resonators.clone(),
                };
                let foster = foster_map(&circuit)?;
                for (name, given, derived) in [
                    ("e_c", spec.e_c, foster.charging_energy()),
                    ("e_l", spec.e_l, foster.inductive_energy()),
                ] {
                    if (given - derived).abs() > 1e-6 * derived {
                        return Err(CliError::Config(format!(
                            "qubit.{name} = {given} disagrees with the circuit, which gives {derived:.10}"
                        )));
                    }
                }
                Ok((foster, Some(circuit)))
            }
        }
    }
}

/// Sets `section.key = value`, parsing `value` as a TOML literal and falling
/// back to a plain string.
fn apply_override(table: &mut toml::Table, assignment: &str) -> Result<(), CliError> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set expects section.key=value, got `{assignment}`")))?;
    let keys: Vec<&str> = path.trim().split('.').collect();
    if keys.len() < 2 || keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Config(format!("--set expects section.key=value, got `{assignment}`")));
    }
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    let (last, parents) = keys.split_last().expect("at least two keys");
    let mut node = table;
    for key in parents {
        let entry = node
            .entry(key.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("--set {path}: `{key}` is not a section")))?;
    }
    node.insert(last.to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse_literals() {
        let mut t: toml::Table = toml::from_str("[qubit]\ne_c = 1.0").unwrap();
        apply_override(&mut t, "qubit.e_c=3.75").unwrap();
        apply_override(&mut t, "truncation.photon_cutoffs=[14, 5]").unwrap();
        apply_override(&mut t, "analysis.norm=frobenius").unwrap();
        assert_eq!(t["qubit"]["e_c"].as_float(), Some(3.75));
        assert_eq!(t["truncation"]["photon_cutoffs"].as_array().unwrap().len(), 2);
        assert_eq!(t["analysis"]["norm"].as_str(), Some("frobenius"));
        assert!(apply_override(&mut t, "noequals").is_err());
        assert!(apply_override(&mut t, "qubit.e_c.x=1").is_err());
    }
}
