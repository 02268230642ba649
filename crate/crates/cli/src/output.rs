//! Result emitters and the run manifest.
//!
//! Data goes to stdout or `--out`; the manifest goes to `<out>.manifest.json`
//! or, without `--out`, to stderr as one JSON line. Keeping the timestamp out
//! of the data stream makes repeated runs byte-identical.

use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs};
use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// An angle as recorded in manifests and JSON rows.
pub fn angle_value(radians: f64) -> Value {
    json!({ "radians": radians, "pi_units": radians / PI })
}

/// 17 significant digits, the round-trip width of an IEEE double.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub subcommand: String,
    pub output_schema: String,
    pub command_line: Vec<String>,
    pub parameters: Map<String, Value>,
    pub settings: Map<String, Value>,
    pub assumptions: Vec<String>,
    pub summary: Option<Value>,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        let threads = std::env::var(crate::THREADS_ENV).unwrap_or_else(|_| "0".into());
        let mut settings = Map::new();
        settings.insert("threads".into(), Value::String(threads));
        Self {
            schema: "grover-exact/manifest/v1",
            tool: "grover-exact",
            tool_version: TOOL_VERSION,
            subcommand: subcommand.into(),
            output_schema: format!("grover-exact/{subcommand}/v1"),
            command_line: std::env::args().collect(),
            parameters: Map::new(),
            settings,
            assumptions: Vec::new(),
            summary: None,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    pub fn angle(self, key: &str, radians: f64) -> Self {
        self.param(key, angle_value(radians))
    }

    pub fn setting(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.settings.insert(key.into(), value.into());
        self
    }

    pub fn assume(mut self, note: &str) -> Self {
        self.assumptions.push(note.into());
        self
    }
}

/// A rendered result in all three formats.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => csv_number(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Num(x) if *x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e6) => format!("{x:e}"),
            Cell::Num(x) => format!("{x}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => "undefined".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }
}

impl Table {
    pub fn render(&self, format: Format, schema: &str) -> Result<String, CliError> {
        Ok(match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(CliError::io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))
                        .map_err(CliError::io)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.into_error()))?)
                    .expect("csv output is utf-8")
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            self.header
                                .iter()
                                .zip(row)
                                .map(|(k, c)| (k.to_string(), c.json()))
                                .collect(),
                        )
                    })
                    .collect();
                let doc = json!({ "schema": schema, "rows": rows });
                serde_json::to_string_pretty(&doc).expect("json") + "\n"
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::text).collect())
                    .collect();
                let widths: Vec<usize> = self
                    .header
                    .iter()
                    .enumerate()
                    .map(|(i, h)| cells.iter().map(|r| r[i].len()).fold(h.len(), usize::max))
                    .collect();
                let mut out = String::new();
                let line = |fields: Vec<&str>| {
                    let padded: Vec<String> = fields
                        .iter()
                        .zip(&widths)
                        .map(|(f, w)| format!("{f:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                out += &line(self.header.clone());
                for r in &cells {
                    out += &line(r.iter().map(String::as_str).collect());
                }
                out
            }
        })
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Write `body` and its manifest according to `--out`.
pub fn emit(output: &OutputArgs, body: &str, manifest: &RunManifest) -> Result<(), CliError> {
    let manifest_json = serde_json::to_string_pretty(manifest).expect("json");
    match &output.out {
        Some(path) => {
            fs::write(path, body)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let mpath = manifest_path(path);
            fs::write(&mpath, manifest_json + "\n")
                .map_err(|e| CliError::Usage(format!("{}: {e}", mpath.display())))?;
        }
        None => {
            io::stdout()
                .write_all(body.as_bytes())
                .map_err(CliError::io)?;
            let line = serde_json::to_string(manifest).expect("json");
            eprintln!("{line}");
        }
    }
    Ok(())
}
