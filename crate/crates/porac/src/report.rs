//! Run manifests and tabular output. Every CLI invocation emits a manifest
//! describing the command, scenario, parameters, and seed, plus a table of
//! results in JSON or CSV. Floats are rounded to 12 significant digits before
//! serialization so that repeated runs with the same seed are byte-identical
//! across platforms.

use std::fmt::Write as _;

use serde::Serialize;

/// Crate version baked into every manifest.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance header attached to every emitted document.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub scenario: Option<String>,
    pub parameters: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, scenario: Option<&str>, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            scenario: scenario.map(str::to_string),
            parameters: Vec::new(),
            seed,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }
}

/// Rounds to 12 significant digits; leaves zeros and non-finite values alone.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - magnitude);
    (x * factor).round() / factor
}

/// A single output value: everything the table emitters know how to print.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Value {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(round_sig(x))
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl Value {
    fn csv_cell(&self) -> String {
        match self {
            Value::Float(x) => format!("{x}"),
            Value::Int(x) => format!("{x}"),
            Value::Bool(x) => format!("{x}"),
            Value::Text(s) => {
                if s.contains([',', '"', '\n']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }
}

/// Column-ordered result table with one row per record.
#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }
}

/// Complete document: manifest plus table.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub results: Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(crate::Error::OutOfRange(format!(
                "unknown format {other:?} (expected json or csv)"
            ))),
        }
    }
}

impl Report {
    pub fn new(manifest: RunManifest, results: Table) -> Self {
        Report { manifest, results }
    }

    /// Pretty JSON with stable field order (struct-declaration order).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// RFC 4180 CSV with LF line endings. Manifest entries become leading
    /// `# key=value` comment lines, then header and data rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command={}", self.manifest.command);
        if let Some(s) = &self.manifest.scenario {
            let _ = writeln!(out, "# scenario={s}");
        }
        for (k, v) in &self.manifest.parameters {
            let _ = writeln!(out, "# {k}={v}");
        }
        if let Some(seed) = self.manifest.seed {
            let _ = writeln!(out, "# seed={seed}");
        }
        let _ = writeln!(out, "# tool_version={}", self.manifest.tool_version);
        let _ = writeln!(out, "{}", self.results.columns.join(","));
        for row in &self.results.rows {
            let cells: Vec<String> = row.iter().map(Value::csv_cell).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}
