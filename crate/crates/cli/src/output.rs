//! CSV and JSON emission.
//!
//! Every CSV starts with a `#` line carrying the tool version, the resolved
//! configuration hash and the generation time, followed by one header row.
//! Floats are written with 17 significant digits so that identical inputs
//! give byte-identical bodies.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One CSV cell.
#[derive(Debug, Clone)]
pub enum Cell {
    F(f64),
    U(usize),
    S(String),
    Missing,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::F(v) => v.to_string(),
            Cell::U(v) => v.to_string(),
            Cell::S(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::F)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::U(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::S(v)
    }
}

/// A CSV table under construction.
pub struct Table {
    name: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&'static str]) -> Self {
        Self {
            name: name.to_string(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Collects a command's tables, payload and warnings and writes them out.
pub struct Emitter<'a> {
    config: &'a RunConfig,
    command: &'static str,
    hash: String,
    generated: u64,
    tables: Vec<Table>,
    warnings: Vec<String>,
}

impl<'a> Emitter<'a> {
    pub fn new(config: &'a RunConfig, command: &'static str) -> Self {
        Self {
            config,
            command,
            hash: config.hash(),
            generated: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            tables: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn table(&mut self, table: Table) {
        self.tables.push(table);
    }

    /// Records a warning once; repeats are dropped.
    pub fn warn(&mut self, message: String) {
        if !self.warnings.contains(&message) {
            log::debug!("{message}");
            self.warnings.push(message);
        }
    }

    /// Writes all outputs and returns the written paths and the number of
    /// distinct warnings.
    pub fn finish(self, payload: impl Serialize) -> Result<(Vec<PathBuf>, usize), CliError> {
        let dir = &self.config.output.directory;
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let mut written = Vec::new();
        if self.config.output.formats.contains(&Format::Csv) {
            for t in &self.tables {
                written.push(self.write_csv(dir, t)?);
            }
        }
        if self.config.output.formats.contains(&Format::Json) {
            let path = dir.join(format!("{}.json", self.command));
            let envelope = json!({
                "tool": "rabigauge",
                "version": VERSION,
                "command": self.command,
                "config_hash": self.hash,
                "generated_unix": self.generated,
                "config": self.config,
                "payload": serde_json::to_value(payload).map_err(|e| CliError::Io(e.to_string()))?,
                "warnings": Value::from(self.warnings.clone()),
            });
            let text = serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Io(e.to_string()))?;
            std::fs::write(&path, text + "\n").map_err(|e| io_error(&path, e))?;
            written.push(path);
        }
        if !self.warnings.is_empty() {
            log::warn!("{}: {} warnings recorded in the JSON envelope", self.command, self.warnings.len());
        }
        Ok((written, self.warnings.len()))
    }

    fn write_csv(&self, dir: &Path, t: &Table) -> Result<PathBuf, CliError> {
        let path = dir.join(format!("{}.csv", t.name));
        let mut file = File::create(&path).map_err(|e| io_error(&path, e))?;
        writeln!(
            file,
            "# rabigauge {VERSION} command={} config={} generated_unix={}",
            self.command, self.hash, self.generated
        )
        .map_err(|e| io_error(&path, e))?;
        let mut w = csv::Writer::from_writer(file);
        let csv_err = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
        w.write_record(&t.header).map_err(csv_err)?;
        for row in &t.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
        }
        w.flush().map_err(|e| io_error(&path, e))?;
        Ok(path)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
