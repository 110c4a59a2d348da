use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CSV_HEADER: &str = "experiment_id,n,alpha,N,computed,bound,slack,method,wall_time_ms";

/// One measured quantity. `slack` is `bound - computed` for upper-bound rows
/// and `computed - bound` for lower-bound rows; rows without a bound are
/// informational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub experiment_id: String,
    pub n: usize,
    pub alpha: Option<f64>,
    #[serde(rename = "N")]
    pub max_degree: Option<usize>,
    pub computed: f64,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    pub method: String,
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: Metadata,
    pub rows: Vec<ReportRow>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn new(seed: u64) -> Self {
        Self {
            metadata: Metadata {
                seed,
                tolerances: BTreeMap::new(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                notes: Vec::new(),
            },
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.metadata.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Appends another report's rows and checks; metadata of `self` wins
    /// except that tolerances and notes are merged.
    pub fn merge(&mut self, other: ExperimentReport) {
        self.rows.extend(other.rows);
        self.checks.extend(other.checks);
        self.metadata.tolerances.extend(other.metadata.tolerances);
        for note in other.metadata.notes {
            if !self.metadata.notes.contains(&note) {
                self.metadata.notes.push(note);
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                csv_field(&r.experiment_id),
                r.n,
                opt_float(r.alpha),
                r.max_degree.map(|v| v.to_string()).unwrap_or_default(),
                float(r.computed),
                opt_float(r.bound),
                opt_float(r.slack),
                csv_field(&r.method),
                opt_float(r.wall_time_ms),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
        let body = match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => self.to_json(),
        };
        std::fs::write(path, body)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// 17 significant digits in scientific notation.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
