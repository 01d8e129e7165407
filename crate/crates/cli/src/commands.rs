//! Subcommand implementations.

use rabigauge::analysis::eta_grid;
use rabigauge::{
    coupling_operators, f_ratio, f_ratio_from_couplings, foster_map, gauge_vector, no_decoupling_check, presets,
    solve_fluxonium, sw_exact, sw_order, sweep_omega_bar, BlockSplit, FluxoniumSpec, FosterForm, GaugeStudy,
    GaugeSystem, ModeSummary, Objective, PhysicalCircuit, QubitEigensystem, SweepSettings, TruncationSettings,
};
use serde_json::json;

use crate::config::{CircuitConfig, RunConfig};
use crate::output::{Cell, Emitter, Table};
use crate::CliError;

/// What a command reports back to `main`.
pub struct Report {
    pub summary: Vec<String>,
    pub files: Vec<std::path::PathBuf>,
    pub warnings: usize,
}

struct Setup {
    qubit: QubitEigensystem,
    system: GaugeSystem,
}

impl Setup {
    fn omega_10(&self) -> f64 {
        self.qubit.transition(1, 0)
    }
}

fn setup(cfg: &RunConfig, command: &str) -> Result<Setup, CliError> {
    let (foster, _) = cfg.resolve(command)?;
    let t = &cfg.truncation;
    let qubit = solve_fluxonium(&FluxoniumSpec::from_foster(&foster), t.basis_size, t.qubit_levels)?;
    let cutoffs = match &t.photon_cutoffs {
        Some(c) if c.len() != foster.mode_count() => {
            return Err(CliError::Config(format!(
                "truncation.photon_cutoffs has {} entries for {} modes",
                c.len(),
                foster.mode_count()
            )))
        }
        Some(c) => c.clone(),
        None => {
            let freqs: Vec<f64> = foster.modes.iter().map(|m| m.frequency()).collect();
            t.auto_cutoffs().cutoffs(&freqs)
        }
    };
    let mut trunc = TruncationSettings::new(t.qubit_levels, cutoffs);
    trunc.dimension_budget = t.dimension_budget;
    let system = GaugeSystem::new(&qubit, &foster, &trunc)?;
    Ok(Setup {
        qubit,
        system,
    })
}

pub fn qubit(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = cfg.spec();
    let t = &cfg.truncation;
    let q = solve_fluxonium(&spec, t.basis_size, t.qubit_levels)?;
    let n = q.kept_levels();
    let mut out = Emitter::new(cfg, "qubit");

    let mut energies = Table::new("qubit_energies", &["level", "energy", "parity"]);
    for (i, &e) in q.energies.iter().enumerate() {
        energies.push(vec![i.into(), e.into(), Cell::S(q.parity[i].to_string())]);
    }
    out.table(energies);

    let mut transitions = Table::new("qubit_transitions", &["name", "n", "m", "omega"]);
    for a in 1..n {
        for b in 0..a {
            transitions.push(vec![format!("omega_{a}{b}").into(), a.into(), b.into(), q.transition(a, b).into()]);
        }
    }
    out.table(transitions);

    let mut elements = Table::new("qubit_elements", &["n", "m", "flux", "charge_imag", "flux_squared"]);
    for a in 0..n {
        for b in 0..n {
            elements.push(vec![
                a.into(),
                b.into(),
                q.flux[(a, b)].into(),
                q.charge[(a, b)].into(),
                q.flux_squared[(a, b)].into(),
            ]);
        }
    }
    out.table(elements);

    let ehrenfest = rabigauge::charge_from_flux_check(&q, &spec);
    let (w10, w21) = (q.transition(1, 0), if n > 2 { q.transition(2, 1) } else { f64::NAN });
    let (files, warnings) = out.finish(json!({
        "energies": q.energies,
        "omega_10": w10,
        "omega_21": w21,
        "basis_size": q.basis_size,
        "converged": true,
        "charge_flux_residual": ehrenfest,
    }))?;
    Ok(Report {
        summary: vec![format!("omega_10 = {w10:.10} GHz"), format!("omega_21 = {w21:.10} GHz")],
        files,
        warnings,
    })
}

pub fn foster(cfg: &RunConfig) -> Result<Report, CliError> {
    let (foster, _) = cfg.resolve("foster")?;
    let summary = ModeSummary::from_foster(&foster)?;
    let mut out = Emitter::new(cfg, "foster");
    let mut modes = Table::new(
        "foster_modes",
        &[
            "mode",
            "capacitance",
            "inductance",
            "frequency",
            "impedance",
            "charging_energy",
            "inductive_energy",
            "weight",
        ],
    );
    for (k, m) in foster.modes.iter().enumerate() {
        modes.push(vec![
            k.into(),
            m.capacitance.into(),
            m.inductance.into(),
            m.frequency().into(),
            m.impedance().into(),
            m.charging_energy().into(),
            m.inductive_energy().into(),
            summary.weights[k].into(),
        ]);
    }
    out.table(modes);
    let mut gauge = Table::new("gauge_vector", &["eta", "mode", "t"]);
    for eta in eta_grid(cfg.analysis.eta_points) {
        let g = gauge_vector(eta, &foster)?;
        for (k, &t) in g.t.iter().enumerate() {
            gauge.push(vec![eta.into(), k.into(), t.into()]);
        }
    }
    out.table(gauge);
    let coupled = no_decoupling_check(&foster)?;
    let (files, warnings) = out.finish(json!({
        "total_capacitance": foster.total_capacitance,
        "ground_capacitance": foster.ground_capacitance,
        "qubit_capacitance": foster.qubit_capacitance(),
        "charging_energy": foster.charging_energy(),
        "inductive_energy": foster.inductive_energy(),
        "omega_bar": summary.mean_frequency,
        "no_decoupling": coupled,
        "modes": foster.modes,
    }))?;
    Ok(Report {
        summary: vec![
            format!("C_sigma = {:.6} fF, C_0 = {:.6} fF", foster.total_capacitance, foster.ground_capacitance),
            format!("omega_bar = {:.6} GHz", summary.mean_frequency),
        ],
        files,
        warnings,
    })
}

pub fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let s = setup(cfg, "spectrum")?;
    let a = &cfg.analysis;
    let settings = a.study_settings(s.omega_10());
    let levels = a.levels + 1;
    let split = BlockSplit::two_level(s.system.basis());
    let h0 = s.system.bare();
    let mut out = Emitter::new(cfg, "spectrum");
    let mut spectra = Table::new("spectrum", &["eta", "model", "level", "energy", "relative"]);
    let mut sigmas = Table::new("spectrum_sigma", &["eta", "model", "sigma"]);
    let record = |eta: f64, model: &str, e: &[f64], full: &[f64], spectra: &mut Table, sigmas: &mut Table| {
        for (i, &v) in e.iter().take(levels).enumerate() {
            spectra.push(vec![eta.into(), model.into(), i.into(), v.into(), (v - e[0]).into()]);
        }
        let sigma = rabigauge::sigma_deviation(full, e, a.levels).ok();
        sigmas.push(vec![eta.into(), model.into(), sigma.into()]);
    };
    for eta in eta_grid(a.eta_points) {
        let full_h = s.system.build_full(eta)?;
        let full = full_h.eigenvalues()?;
        record(eta, "full", &full, &full, &mut spectra, &mut sigmas);
        let qrm = s.system.build_qrm(eta, a.qrm_diamagnetic)?.eigenvalues()?;
        record(eta, "qrm", &qrm, &full, &mut spectra, &mut sigmas);
        let v = s.system.interaction(eta, true)?;
        for &k in &a.sw_orders {
            let eff = sw_order(&h0, &v, &split, k, settings.policy)?;
            for w in &eff.warnings {
                out.warn(format!("eta={eta}: {w}"));
            }
            record(eta, &format!("sw{k}"), &eff.eigenvalues()?, &full, &mut spectra, &mut sigmas);
        }
        if a.sw_exact {
            let eff = sw_exact(&full_h, &split)?;
            for w in &eff.warnings {
                out.warn(format!("eta={eta}: {w}"));
            }
            record(eta, "swinf", &eff.eigenvalues()?, &full, &mut spectra, &mut sigmas);
        }
    }
    out.table(spectra);
    out.table(sigmas);
    let (files, warnings) = out.finish(json!({
        "omega_10": s.omega_10(),
        "photon_cutoffs": s.system.basis().cutoffs(),
        "dimension": s.system.basis().dim(),
        "levels": a.levels,
    }))?;
    Ok(Report {
        summary: vec![format!(
            "{} gauge points, dimension {}",
            a.eta_points,
            s.system.basis().dim()
        )],
        files,
        warnings,
    })
}

pub fn optimize(cfg: &RunConfig) -> Result<Report, CliError> {
    let s = setup(cfg, "optimize")?;
    let a = &cfg.analysis;
    let study = GaugeStudy::new(s.system.clone(), a.study_settings(s.omega_10()))?;
    let opt = a.optimize_settings();
    let h2 = study.optimize(Objective::H2Norm, &opt)?;
    let sigma = study.optimize(Objective::Sigma, &opt)?;
    let mut out = Emitter::new(cfg, "optimize");
    for (eta, w) in &h2.warnings {
        out.warn(format!("eta={eta}: {w}"));
    }
    for f in h2.failures.iter().chain(&sigma.failures) {
        out.warn(format!("eta={}: evaluation failed: {}", f.eta, f.message));
    }
    let mut curves = Table::new("optimize_curves", &["eta", "h2_norm", "sigma"]);
    for (i, &eta) in h2.grid.iter().enumerate() {
        curves.push(vec![eta.into(), h2.curve[i].into(), sigma.curve[i].into()]);
    }
    out.table(curves);
    let (files, warnings) = out.finish(json!({
        "eta_star": h2.eta_opt,
        "h2_norm_min": h2.value,
        "eta_star_grid": h2.grid[h2.grid_argmin],
        "eta_sigma": sigma.eta_opt,
        "sigma_min": sigma.value,
        "eta_sigma_grid": sigma.grid[sigma.grid_argmin],
        "norm": a.norm,
        "photon_window": a.photon_window,
        "photon_cutoffs": s.system.basis().cutoffs(),
        "omega_10": s.omega_10(),
        "mean_spacing": study.mean_spacing(),
    }))?;
    Ok(Report {
        summary: vec![
            format!("eta_star = {:.6}", h2.eta_opt),
            format!("eta_sigma = {:.6}", sigma.eta_opt),
        ],
        files,
        warnings,
    })
}

/// Two-resonator circuit whose second inductance the sweep varies.
fn sweep_base(cfg: &RunConfig, command: &str) -> Result<PhysicalCircuit, CliError> {
    let base = match cfg.circuit(command)? {
        CircuitConfig::Tuned { coupling_ratio, .. } => presets::two_resonator_family(&cfg.spec(), *coupling_ratio)?,
        CircuitConfig::Physical { .. } => cfg.resolve(command)?.1.expect("physical circuit"),
        CircuitConfig::Foster { .. } => {
            return Err(CliError::Config(format!(
                "`{command}` varies a resonator inductance and needs model = \"tuned\" or \"physical\""
            )))
        }
    };
    if base.mode_count() != 2 {
        return Err(CliError::Config(format!("`{command}` needs a two-resonator circuit")));
    }
    Ok(base)
}

pub fn sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let base = sweep_base(cfg, "sweep")?;
    let (foster, _) = cfg.resolve("sweep")?;
    let spec = FluxoniumSpec::from_foster(&foster);
    let t = &cfg.truncation;
    let q = solve_fluxonium(&spec, t.basis_size, t.qubit_levels.max(2))?;
    let sw = &cfg.sweep;
    let l_r2 = presets::sweep_inductances(&base, sw.omega_min, sw.omega_max, sw.points);
    let settings = SweepSettings {
        eta_points: sw.eta_points,
        qubit_levels: t.qubit_levels,
        basis_size: t.basis_size,
        cutoffs: t.auto_cutoffs(),
        dimension_budget: t.dimension_budget,
        study: cfg.analysis.study_settings(q.transition(1, 0)),
    };
    let r = sweep_omega_bar(&base, &l_r2, &settings)?;
    let mut out = Emitter::new(cfg, "sweep");
    for w in &r.warnings {
        out.warn(w.clone());
    }
    for f in &r.failures {
        let at = f.eta.map_or(String::new(), |e| format!(" eta={e}"));
        out.warn(format!("L_r2={}{at}: evaluation failed: {}", f.l_r2, f.message));
    }
    let mut grid = Table::new(
        "sweep",
        &["l_r2", "omega_2", "omega_bar", "eta", "sigma", "h2_norm", "eta_sigma", "eta_star"],
    );
    let mut columns = Table::new(
        "sweep_columns",
        &["l_r2", "omega_2", "omega_bar", "mean_spacing", "photon_cutoffs", "eta_sigma", "eta_star"],
    );
    for (c, &l) in r.l_r2.iter().enumerate() {
        for (i, &eta) in r.eta.iter().enumerate() {
            grid.push(vec![
                l.into(),
                r.omega_2[c].into(),
                r.omega_bar[c].into(),
                eta.into(),
                r.sigma[c][i].into(),
                r.h2_norm[c][i].into(),
                r.eta_sigma[c].into(),
                r.eta_star[c].into(),
            ]);
        }
        let cutoffs: Vec<String> = r.photon_cutoffs[c].iter().map(|n| n.to_string()).collect();
        columns.push(vec![
            l.into(),
            r.omega_2[c].into(),
            r.omega_bar[c].into(),
            r.mean_spacing[c].into(),
            cutoffs.join(";").into(),
            r.eta_sigma[c].into(),
            r.eta_star[c].into(),
        ]);
    }
    out.table(grid);
    out.table(columns);
    let (files, warnings) = out.finish(json!({
        "omega_bar": r.omega_bar,
        "eta_sigma": r.eta_sigma,
        "eta_star": r.eta_star,
        "mean_spacing": r.mean_spacing,
        "levels": r.levels,
        "failures": r.failures.len(),
    }))?;
    Ok(Report {
        summary: vec![format!(
            "{} x {} grid, omega_bar {:.3}..{:.3} GHz, {} failed points",
            r.eta.len(),
            r.l_r2.len(),
            r.omega_bar.first().copied().unwrap_or(f64::NAN),
            r.omega_bar.last().copied().unwrap_or(f64::NAN),
            r.failures.len()
        )],
        files,
        warnings,
    })
}

pub fn criterion(cfg: &RunConfig) -> Result<Report, CliError> {
    let (foster, _) = cfg.resolve("criterion")?;
    let t = &cfg.truncation;
    let spec = FluxoniumSpec::from_foster(&foster);
    let q = solve_fluxonium(&spec, t.basis_size, t.qubit_levels)?;
    let transitions = &cfg.criterion.transitions;
    if let Some(&[n, _]) = transitions.iter().find(|[n, _]| *n >= q.kept_levels()) {
        return Err(CliError::Config(format!(
            "criterion.transitions uses level {n} but truncation.qubit_levels is {}",
            q.kept_levels()
        )));
    }
    let summary = ModeSummary::from_foster(&foster)?;
    let mut out = Emitter::new(cfg, "criterion");
    let mut table = Table::new("criterion", &["n", "m", "omega_nm", "omega_bar", "f_nm", "f_nm_couplings"]);
    let mut lines = Vec::new();
    let mut payload = Vec::new();
    for &[n, m] in transitions {
        let f = f_ratio(n, m, &q, &summary)?;
        let g = f_ratio_from_couplings(n, m, &q, &foster)?;
        table.push(vec![
            n.into(),
            m.into(),
            q.transition(n, m).into(),
            summary.mean_frequency.into(),
            f.into(),
            g.into(),
        ]);
        lines.push(format!("|f_{n}{m}| = {f:.6}"));
        payload.push(json!({ "n": n, "m": m, "f": f, "f_couplings": g }));
    }
    out.table(table);

    let mut curves = Table::new(
        "couplings",
        &[
            "l_r2",
            "omega_2",
            "omega_bar",
            "mode",
            "n",
            "m",
            "omega_k",
            "g_flux",
            "g_charge",
            "g_flux_over_omega",
            "g_charge_over_omega",
        ],
    );
    let points: Vec<(Option<f64>, FosterForm)> = match sweep_base(cfg, "criterion") {
        Ok(base) if cfg.criterion.along_sweep => {
            let sw = &cfg.sweep;
            presets::sweep_inductances(&base, sw.omega_min, sw.omega_max, sw.points)
                .into_iter()
                .map(|l| {
                    let mut c = base.clone();
                    c.resonators[1].inductance = l;
                    foster_map(&c).map(|f| (Some(l), f))
                })
                .collect::<Result<_, _>>()?
        }
        _ => vec![(None, foster.clone())],
    };
    for (l, f) in &points {
        let q = solve_fluxonium(&FluxoniumSpec::from_foster(f), t.basis_size, t.qubit_levels)?;
        let bar = ModeSummary::from_foster(f)?.mean_frequency;
        let omega_2 = f.modes.get(1).map(|m| m.frequency());
        for k in 0..f.mode_count() {
            let g = coupling_operators(&q, f, k)?;
            let w = f.modes[k].frequency();
            for &[n, m] in transitions {
                curves.push(vec![
                    (*l).into(),
                    omega_2.into(),
                    bar.into(),
                    k.into(),
                    n.into(),
                    m.into(),
                    w.into(),
                    g.flux[(n, m)].into(),
                    g.charge[(n, m)].into(),
                    (g.flux[(n, m)] / w).into(),
                    (g.charge[(n, m)] / w).into(),
                ]);
            }
        }
    }
    out.table(curves);
    let (files, warnings) = out.finish(json!({
        "omega_bar": summary.mean_frequency,
        "weights": summary.weights,
        "ratios": payload,
    }))?;
    Ok(Report {
        summary: lines,
        files,
        warnings,
    })
}
