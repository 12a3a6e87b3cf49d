use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::Resolved;
use crate::error::{usage, CliError, CliResult};

/// Parameters that affect only where or how fast results are produced; kept
/// out of the embedded manifest so payloads are byte-identical across them.
const NON_SEMANTIC: &[&str] = &["threads", "out", "manifest", "config", "format"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (csv or json)")),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub subcommand: String,
    pub parameters: BTreeMap<String, Resolved>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub threads: usize,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<OutputDigest>,
}

pub struct RunContext {
    pub subcommand: String,
    pub params: BTreeMap<String, Resolved>,
    pub seed: Option<u64>,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub started: Instant,
}

pub fn schema_name(subcommand: &str) -> String {
    format!("loggas.{}.v1", subcommand.replace(' ', "."))
}

impl RunContext {
    /// Deterministic part of the manifest, embedded in JSON payloads.
    pub fn embedded(&self) -> Value {
        let params: BTreeMap<&String, &Resolved> = self
            .params
            .iter()
            .filter(|(k, _)| !NON_SEMANTIC.contains(&k.as_str()))
            .collect();
        json!({
            "subcommand": self.subcommand,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.seed,
            "parameters": params,
        })
    }

    pub fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Usage(format!("CSV encoding failed: {e}"));
        w.write_record(header).map_err(fail)?;
        for r in rows {
            w.write_record(r).map_err(fail)?;
        }
        w.into_inner().map_err(|e| CliError::Usage(format!("CSV encoding failed: {e}")))
    }

    pub fn write_csv(&self, header: &[String], rows: &[Vec<String>]) -> CliResult<()> {
        self.emit(Self::csv_bytes(header, rows)?)
    }

    /// Writes `body` with `schema` and the embedded manifest prepended.
    pub fn write_json(&self, body: Value) -> CliResult<()> {
        let mut obj = serde_json::Map::new();
        obj.insert("schema".into(), Value::String(schema_name(&self.subcommand)));
        obj.insert("manifest".into(), self.embedded());
        match body {
            Value::Object(m) => obj.extend(m),
            other => {
                obj.insert("result".into(), other);
            }
        }
        let mut bytes = serde_json::to_vec_pretty(&Value::Object(obj))
            .map_err(|e| CliError::Usage(format!("JSON encoding failed: {e}")))?;
        bytes.push(b'\n');
        self.emit(bytes)
    }

    fn emit(&self, bytes: Vec<u8>) -> CliResult<()> {
        let mut outputs = Vec::new();
        match &self.out {
            Some(path) => {
                std::fs::write(path, &bytes).map_err(|e| CliError::io(path.display().to_string(), e))?;
                outputs.push(OutputDigest {
                    path: path.display().to_string(),
                    sha256: hex(&Sha256::digest(&bytes)),
                });
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(&bytes)
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::io("<stdout>", e))?;
                outputs.push(OutputDigest {
                    path: "<stdout>".into(),
                    sha256: hex(&Sha256::digest(&bytes)),
                });
            }
        }
        let sidecar = match (&self.manifest, &self.out) {
            (Some(m), _) => Some(m.clone()),
            (None, Some(out)) => Some(sidecar_path(out)),
            (None, None) => None,
        };
        if let Some(path) = sidecar {
            let manifest = RunManifest {
                schema: "loggas.manifest.v1",
                subcommand: self.subcommand.clone(),
                parameters: self.params.clone(),
                seed: self.seed,
                version: env!("CARGO_PKG_VERSION"),
                threads: self.threads,
                wall_clock_seconds: self.started.elapsed().as_secs_f64(),
                outputs,
            };
            let mut text = serde_json::to_vec_pretty(&manifest)
                .map_err(|e| CliError::Usage(format!("JSON encoding failed: {e}")))?;
            text.push(b'\n');
            std::fs::write(&path, text).map_err(|e| CliError::io(path.display().to_string(), e))?;
        }
        Ok(())
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads whitespace- or comma-separated reals.
pub fn parse_reals(text: &str, what: &str) -> CliResult<Vec<f64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => usage(format!("{what}: cannot parse {t:?} as a finite real")),
        })
        .collect()
}
