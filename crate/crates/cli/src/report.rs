//! Report documents: `{manifest, reports[], tables[]}` as JSON, CSV or text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use fockalg::algebra::RelationReport;
use fockalg::RadicalScalar;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One table cell. Exact scalars keep the tuple form in JSON and render
/// as radicals in CSV and text.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Exact(RadicalScalar),
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Float(v) => s.serialize_f64(*v),
            Cell::Bool(v) => s.serialize_bool(*v),
            Cell::Text(v) => s.serialize_str(v),
            Cell::Exact(v) => v.serialize(s),
        }
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Exact(v) => v.to_string(),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<RadicalScalar> for Cell {
    fn from(v: RadicalScalar) -> Self {
        Cell::Exact(v)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_owned(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn of_reports(reports: &[RelationReport]) -> Self {
        let mut t = Table::new(
            "relations",
            &[
                "identity",
                "indices",
                "family",
                "n",
                "p",
                "residual_max_abs",
                "exact_pass",
            ],
        );
        for r in reports {
            let idx: Vec<String> = r.indices.iter().map(|i| i.to_string()).collect();
            t.push(vec![
                r.identity.clone().into(),
                idx.join(" ").into(),
                r.family.to_string().into(),
                r.n.into(),
                r.p.into(),
                r.residual_max_abs.into(),
                r.exact_pass.into(),
            ]);
        }
        t
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn to_text(&self) -> String {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(k, c)| {
                rendered
                    .iter()
                    .map(|r| r[k].chars().count())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_owned()
        };
        let mut out = format!("{}\n{}\n", self.name, line(&self.columns));
        for r in &rendered {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub timestamp: String,
    pub artifact_version: String,
    pub outputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub manifest: RunManifest,
    pub reports: Vec<RelationReport>,
    pub tables: Vec<Table>,
}

impl Document {
    pub fn new(command: &str, parameters: BTreeMap<String, String>) -> Self {
        Self {
            manifest: RunManifest {
                command: command.to_owned(),
                parameters,
                timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                artifact_version: env!("CARGO_PKG_VERSION").to_owned(),
                outputs: Vec::new(),
            },
            reports: Vec::new(),
            tables: Vec::new(),
        }
    }

    /// The table written to CSV: the relation reports when there are any,
    /// otherwise the first table.
    fn csv_table(&self) -> Option<Table> {
        if self.reports.is_empty() {
            self.tables.first().cloned()
        } else {
            Some(Table::of_reports(&self.reports))
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&t.to_text());
            out.push('\n');
        }
        let failed: Vec<&RelationReport> = self.reports.iter().filter(|r| !r.exact_pass).collect();
        for r in &failed {
            let _ = writeln!(
                out,
                "FAILED {} {:?} residual {:e}",
                r.identity, r.indices, r.residual_max_abs
            );
        }
        out
    }

    /// Prints the body for `format` on stdout and, when `out` is given, writes
    /// `<command>.json` (and `<command>.csv` for CSV output) into it. Files are
    /// only touched after everything has been computed.
    pub fn emit(mut self, format: Format, out: Option<&Path>) -> Result<()> {
        let csv_body = match format {
            Format::Csv => Some(
                self.csv_table()
                    .map(|t| t.to_csv())
                    .transpose()?
                    .unwrap_or_default(),
            ),
            _ => None,
        };
        let mut files: Vec<(PathBuf, String)> = Vec::new();
        if let Some(dir) = out {
            let stem = self.manifest.command.clone();
            self.manifest.outputs.push(dir.join(format!("{stem}.json")));
            if csv_body.is_some() {
                self.manifest.outputs.push(dir.join(format!("{stem}.csv")));
            }
        }
        let json = serde_json::to_string_pretty(&self)? + "\n";
        if let Some(dir) = out {
            files.push((self.manifest.outputs[0].clone(), json.clone()));
            if let Some(body) = &csv_body {
                files.push((self.manifest.outputs[1].clone(), body.clone()));
            }
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (path, body) in &files {
                fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        match format {
            Format::Json => print!("{json}"),
            Format::Csv => print!("{}", csv_body.unwrap_or_default()),
            Format::Text => print!("{}", self.to_text()),
        }
        Ok(())
    }
}
