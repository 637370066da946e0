//! CSV tables, JSON summaries and the run manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::constants::{PhysicalConstants, CONSTANTS_VERSION};
use crate::error::Result;

/// Environment variable that overrides the default output directory.
pub const OUT_DIR_ENV: &str = "GQSR_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "gqsr-out";
pub const MANIFEST_SCHEMA: &str = "gqsr-manifest/1";

/// `--out` wins, then the environment, then the default.
pub fn output_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_OUT_DIR),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            // non-finite numbers have no JSON form; keep them as strings
            Cell::Num(x) if !x.is_finite() => Value::String(x.to_string()),
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Shortest round-trip form, scientific outside [1e-3, 1e6).
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-3..1e6).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

/// One output table. Column headers are rendered as `name [unit]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem, e.g. `eg_curve`.
    pub name: String,
    /// Versioned schema id, e.g. `eg-curve/1`.
    pub schema: String,
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, schema: &str, columns: &[(&str, &str)]) -> Self {
        Self {
            name: name.into(),
            schema: schema.into(),
            columns: columns.iter().map(|(n, u)| (n.to_string(), u.to_string())).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width for {}", self.name);
        self.rows.push(row);
    }

    pub fn headers(&self) -> Vec<String> {
        self.columns.iter().map(|(n, u)| format!("{n} [{u}]")).collect()
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut buf = format!("# schema: {}\n", self.schema).into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(self.headers())?;
            for r in &self.rows {
                w.write_record(r.iter().map(Cell::render))?;
            }
            w.flush()?;
        }
        Ok(buf)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: serde_json::Map<String, Value> =
                    self.columns.iter().zip(r).map(|((n, _), c)| (n.clone(), c.to_json())).collect();
                Value::Object(m)
            })
            .collect();
        let units: BTreeMap<&str, &str> = self.columns.iter().map(|(n, u)| (n.as_str(), u.as_str())).collect();
        json!({ "schema": self.schema, "units": units, "rows": rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// CSV tables plus a JSON summary.
    Csv,
    /// Tables embedded in the JSON summary.
    Json,
}

/// Everything a verb produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub summary: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Provenance record written beside every run's outputs.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub schema: &'static str,
    pub verb: String,
    pub crate_version: &'static str,
    pub constants_version: &'static str,
    pub constants: PhysicalConstants,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
    pub outputs: Vec<FileEntry>,
    /// SHA-256 over the `file  sha256` lines of every output.
    pub content_hash: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn json_bytes(v: &impl Serialize) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

/// Writes tables, summary and manifest into `dir`; returns the manifest.
pub fn write_run(
    dir: &Path,
    verb: &str,
    seed: u64,
    params: &BTreeMap<String, String>,
    out: &RunOutput,
    format: Format,
) -> Result<Manifest> {
    std::fs::create_dir_all(dir)?;
    let stem = verb.replace('-', "_");
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut summary = out.summary.clone();
    match format {
        Format::Csv => {
            for t in &out.tables {
                files.push((format!("{}.csv", t.name), t.to_csv()?));
            }
        }
        Format::Json => {
            let tables: serde_json::Map<String, Value> =
                out.tables.iter().map(|t| (t.name.clone(), t.to_json())).collect();
            if let Value::Object(m) = &mut summary {
                m.insert("tables".into(), Value::Object(tables));
            }
        }
    }
    files.push((format!("{stem}.json"), json_bytes(&summary)?));
    let mut outputs = Vec::new();
    for (name, bytes) in &files {
        std::fs::write(dir.join(name), bytes)?;
        outputs.push(FileEntry { file: name.clone(), bytes: bytes.len(), sha256: sha256_hex(bytes) });
    }
    let listing: String = outputs.iter().map(|f| format!("{}  {}\n", f.file, f.sha256)).collect();
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA,
        verb: verb.to_string(),
        crate_version: env!("CARGO_PKG_VERSION"),
        constants_version: CONSTANTS_VERSION,
        constants: PhysicalConstants::CODATA_2018,
        seed,
        params: params.clone(),
        outputs,
        content_hash: sha256_hex(listing.as_bytes()),
    };
    std::fs::write(dir.join(format!("{stem}.manifest.json")), json_bytes(&manifest)?)?;
    Ok(manifest)
}
