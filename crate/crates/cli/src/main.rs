//! `rabigauge` command-line driver.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(name = "rabigauge", version, about = "Optimal-gauge analysis of a fluxonium coupled to resonators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run configuration (TOML).
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set analysis.eta_points=81`.
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE", global = true)]
    overrides: Vec<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Fluxonium spectrum and matrix elements.
    Qubit,
    /// Foster form, mode summary and gauge vectors.
    Foster,
    /// Full, Rabi and Schrieffer-Wolff spectra across the gauge grid.
    Spectrum,
    /// Optimal gauges from the second-order norm and the spectral deviation.
    Optimize,
    /// Spectral deviation over the (eta, mean frequency) plane.
    Sweep,
    /// Flux-to-charge coupling ratios and coupling elements.
    Criterion,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Compute(rabigauge::Error),
    Io(String),
}

impl From<rabigauge::Error> for CliError {
    fn from(e: rabigauge::Error) -> Self {
        use rabigauge::Error as E;
        match e {
            E::InvalidParameter { .. }
            | E::UnsupportedModeCount(_)
            | E::AsymmetricCoupling(..)
            | E::EtaOutOfRange(_)
            | E::DimensionBudget { .. }
            | E::GridTooCoarse { .. } => CliError::Config(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
        }
    }
}

fn run(cli: &Cli) -> Result<commands::Report, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let cfg = RunConfig::load(path, &cli.overrides)?;
    if let Some(n) = cfg.output.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("output.threads: {e}")))?;
    }
    match cli.command {
        Command::Qubit => commands::qubit(&cfg),
        Command::Foster => commands::foster(&cfg),
        Command::Spectrum => commands::spectrum(&cfg),
        Command::Optimize => commands::optimize(&cfg),
        Command::Sweep => commands::sweep(&cfg),
        Command::Criterion => commands::criterion(&cfg),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            for line in &report.summary {
                println!("{line}");
            }
            if report.warnings > 0 {
                println!("{} warnings", report.warnings);
            }
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
