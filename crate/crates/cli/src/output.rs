use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// Shortest decimal that parses back to the same `f64`; scientific notation
/// outside `[1e-5, 1e16)`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A numeric table with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [String],
    rows: Vec<Vec<serde_json::Value>>,
}

fn json_number(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|v| format_number(*v)))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows = self.rows.iter().map(|r| r.iter().map(|v| json_number(*v)).collect()).collect();
                let doc = JsonTable { columns: &self.columns, rows };
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// One entry of the verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub max_abs_residual: f64,
    pub tail_bound: f64,
    pub verdict: hyperkg::verify::Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&hyperkg::verify::ResidualReport> for Case {
    fn from(r: &hyperkg::verify::ResidualReport) -> Self {
        Self {
            name: r.name.clone(),
            max_abs_residual: r.max_abs_residual,
            tail_bound: r.tail_bound,
            verdict: r.verdict,
            detail: r.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.verdict == hyperkg::verify::Verdict::Pass)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["suite", "name", "max_abs_residual", "tail_bound", "verdict", "detail"])?;
                for c in &self.cases {
                    let verdict = if c.verdict == hyperkg::verify::Verdict::Pass { "pass" } else { "fail" };
                    w.write_record([
                        self.suite.as_str(),
                        c.name.as_str(),
                        &format_number(c.max_abs_residual),
                        &format_number(c.tail_bound),
                        verdict,
                        c.detail.as_deref().unwrap_or(""),
                    ])?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Runs `emit` against the chosen sink. A file is only created once the
/// content is ready, so a failed run does not leave a partial file.
pub fn emit<F>(path: Option<&Path>, emit: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let mut buf = Vec::new();
            emit(&mut buf)?;
            let mut file = BufWriter::new(File::create(p)?);
            file.write_all(&buf)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}
