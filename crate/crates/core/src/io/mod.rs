//! File formats: numeric CSV tables, run manifests and SVG plots.

mod manifest;
pub mod svg;

pub use manifest::{write_manifest, Manifest};

use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// Parses a headed CSV of floating-point columns. The header must match
/// `columns` exactly; error messages carry 1-based line numbers.
pub fn read_numeric_csv(text: &str, source_name: &str, columns: &[&str]) -> Result<Vec<Vec<f64>>> {
    let parse_err = |line: u64, msg: String| Error::Parse {
        source_name: source_name.to_string(),
        line,
        msg,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| parse_err(1, e.to_string()))?;
    let got: Vec<&str> = header.iter().collect();
    if got != columns {
        return Err(parse_err(
            1,
            format!(
                "expected header `{}`, found `{}`",
                columns.join(","),
                got.join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let mut row = Vec::with_capacity(columns.len());
        for (field, name) in record.iter().zip(columns) {
            let v: f64 = field.parse().map_err(|_| {
                parse_err(line, format!("column `{name}`: `{field}` is not a number"))
            })?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("column `{name}` is not finite")));
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Locale-independent float formatting: plain shortest round-trip form for
/// moderate magnitudes, shortest round-trip exponent form otherwise.
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a = self.0.abs();
        if self.0 == 0.0 || (1e-4..1e9).contains(&a) || !self.0.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

/// Accumulates a CSV document in memory. Numbers are written in Rust's
/// shortest round-trip form, which is locale independent.
#[derive(Debug, Clone)]
pub struct CsvTable {
    text: String,
    width: usize,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self {
            text,
            width: header.len(),
        }
    }

    pub fn push<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: std::fmt::Display,
    {
        let mut n = 0;
        for (i, field) in fields.into_iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            write!(self.text, "{field}").unwrap();
            n += 1;
        }
        debug_assert_eq!(n, self.width);
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn rows(&self) -> usize {
        self.text.lines().count().saturating_sub(1)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_string(path, &self.text)
    }
}
