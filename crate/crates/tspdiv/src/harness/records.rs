//! Per-run record emission and parsing: CSV and JSON lines, plus a
//! self-contained run artifact for the SVG renderers.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diversity::Measure;
use crate::ea::{RunRecord, TerminationReason};
use crate::instance::{Instance, Tour};
use crate::mutation::MutationKind;

/// Exact column order of the CSV format.
pub const CSV_HEADER: &str =
    "instance,n,mu,alpha,measure,mutation,seed,iterations,terminated,gtype,gtype_percent,div,sigma";

/// One flat record row: everything the statistics need, nothing more.
/// Floats are emitted in shortest round-trip form so parsing an emitted
/// file reproduces the rows exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub instance: String,
    pub n: usize,
    pub mu: usize,
    pub alpha: f64,
    pub measure: Measure,
    pub mutation: MutationKind,
    pub seed: u64,
    pub iterations: u64,
    pub terminated: TerminationReason,
    pub gtype: u64,
    pub gtype_percent: f64,
    pub div: f64,
    pub sigma: f64,
}

impl From<&RunRecord> for RecordRow {
    fn from(r: &RunRecord) -> Self {
        RecordRow {
            instance: r.instance.clone(),
            n: r.n,
            mu: r.config.mu,
            alpha: r.config.alpha,
            measure: r.config.measure,
            mutation: r.config.mutation,
            seed: r.config.seed,
            iterations: r.iterations,
            terminated: r.terminated,
            gtype: r.gtype,
            gtype_percent: r.gtype_percent,
            div: r.div,
            sigma: r.sigma,
        }
    }
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("bad CSV header {got:?}")]
    BadHeader { got: String },
    #[error("line {line}: expected {expected} fields, got {got}")]
    FieldCount {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}, column {column}: cannot parse {value:?}")]
    BadField {
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("line {line}: invalid JSON record: {source}")]
    BadJson {
        line: usize,
        source: serde_json::Error,
    },
    #[error("{0}")]
    BadArtifact(serde_json::Error),
    #[error("no records to emit")]
    Empty,
}

/// Output format for record files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Csv,
    JsonLines,
}

impl RecordFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RecordFormat::Csv => "csv",
            RecordFormat::JsonLines => "jsonl",
        }
    }
}

impl std::str::FromStr for RecordFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(RecordFormat::Csv),
            "jsonl" | "json-lines" => Ok(RecordFormat::JsonLines),
            other => Err(format!("unknown format {other:?}, expected csv or jsonl")),
        }
    }
}

/// Render rows as CSV with the fixed header. Byte-stable for a fixed
/// row sequence.
pub fn to_csv(rows: &[RecordRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.instance,
            r.n,
            r.mu,
            r.alpha,
            r.measure.as_str(),
            r.mutation.as_str(),
            r.seed,
            r.iterations,
            r.terminated.as_str(),
            r.gtype,
            r.gtype_percent,
            r.div,
            r.sigma,
        ));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<RecordRow>, RecordError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(RecordError::BadHeader {
                got: header.to_string(),
            })
        }
        None => return Err(RecordError::BadHeader { got: String::new() }),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 13 {
            return Err(RecordError::FieldCount {
                line: line_no,
                expected: 13,
                got: fields.len(),
            });
        }
        fn field<T: std::str::FromStr>(
            line: usize,
            column: &'static str,
            value: &str,
        ) -> Result<T, RecordError> {
            value.parse().map_err(|_| RecordError::BadField {
                line,
                column,
                value: value.to_string(),
            })
        }
        rows.push(RecordRow {
            instance: fields[0].to_string(),
            n: field(line_no, "n", fields[1])?,
            mu: field(line_no, "mu", fields[2])?,
            alpha: field(line_no, "alpha", fields[3])?,
            measure: field(line_no, "measure", fields[4])?,
            mutation: field(line_no, "mutation", fields[5])?,
            seed: field(line_no, "seed", fields[6])?,
            iterations: field(line_no, "iterations", fields[7])?,
            terminated: field(line_no, "terminated", fields[8])?,
            gtype: field(line_no, "gtype", fields[9])?,
            gtype_percent: field(line_no, "gtype_percent", fields[10])?,
            div: field(line_no, "div", fields[11])?,
            sigma: field(line_no, "sigma", fields[12])?,
        });
    }
    Ok(rows)
}

/// One JSON object per line.
pub fn to_jsonl(rows: &[RecordRow]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("record rows serialize"))
        .fold(String::new(), |mut acc, line| {
            acc.push_str(&line);
            acc.push('\n');
            acc
        })
}

pub fn parse_jsonl(text: &str) -> Result<Vec<RecordRow>, RecordError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(idx, line)| {
            serde_json::from_str(line).map_err(|source| RecordError::BadJson {
                line: idx + 1,
                source,
            })
        })
        .collect()
}

/// Write records to `dir/records.{csv,jsonl}`; returns the path.
pub fn emit_records(
    records: &[RunRecord],
    format: RecordFormat,
    dir: &Path,
) -> Result<PathBuf, RecordError> {
    if records.is_empty() {
        return Err(RecordError::Empty);
    }
    let rows: Vec<RecordRow> = records.iter().map(RecordRow::from).collect();
    let body = match format {
        RecordFormat::Csv => to_csv(&rows),
        RecordFormat::JsonLines => to_jsonl(&rows),
    };
    let path = dir.join(format!("records.{}", format.extension()));
    write_file(&path, body.as_bytes())?;
    Ok(path)
}

/// Load record rows from a file, dispatching on its extension
/// (`.jsonl` means JSON lines, anything else CSV).
pub fn load_records(path: &Path) -> Result<Vec<RecordRow>, RecordError> {
    let text = std::fs::read_to_string(path).map_err(|source| RecordError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "jsonl") {
        parse_jsonl(&text)
    } else {
        parse_csv(&text)
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), RecordError> {
    let io_err = |source| RecordError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(bytes).map_err(io_err)
}

/// A self-contained snapshot of one run: the instance (with
/// coordinates), the optimal tour if any, and the full run record
/// including the final population. This is what the `render`
/// subcommand consumes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunArtifact {
    pub instance: Instance,
    pub opt_tour: Option<Tour>,
    pub record: RunRecord,
}

pub fn save_artifact(artifact: &RunArtifact, path: &Path) -> Result<(), RecordError> {
    let body = serde_json::to_string_pretty(artifact).map_err(RecordError::BadArtifact)?;
    write_file(path, body.as_bytes())
}

pub fn load_artifact(path: &Path) -> Result<RunArtifact, RecordError> {
    let text = std::fs::read_to_string(path).map_err(|source| RecordError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(RecordError::BadArtifact)
}
