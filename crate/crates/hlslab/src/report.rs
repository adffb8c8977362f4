//! CSV reports: `#` lines echoing the effective configuration, one table,
//! then `#` summary lines.
//!
//! Numbers are printed in fixed notation so identical inputs give identical
//! bytes.

use std::io::Write;
use std::path::Path;

use hlslab_core::NormBracket;

use crate::cache::write_atomic;
use crate::error::{AppError, Result};

#[derive(Clone, Debug, Default)]
pub struct Report {
    header: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    summary: Vec<(String, String)>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn header(&mut self, key: &str, value: impl ToString) {
        self.header.push((key.into(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        self.rows.push(cells);
    }

    pub fn summary(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for (k, v) in &self.header {
            writeln!(out, "# {k} = {v}").expect("write to Vec");
        }
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&self.columns).map_err(|e| AppError::format("csv", e))?;
            for r in &self.rows {
                w.write_record(r).map_err(|e| AppError::format("csv", e))?;
            }
            w.flush().map_err(|e| AppError::format("csv", e))?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k}: {v}").expect("write to Vec");
        }
        Ok(out)
    }

    /// To `out` if given, else stdout.
    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        let bytes = self.to_bytes()?;
        match out {
            Some(p) => write_atomic(p, &bytes),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(&bytes)
                    .and_then(|_| stdout.flush())
                    .map_err(|e| AppError::io("<stdout>", e))
            }
        }
    }
}

pub fn fixed(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.12}")
    } else {
        x.to_string()
    }
}

pub fn provenance(b: &NormBracket) -> String {
    format!("{}/{}", b.lower_from.as_str(), b.upper_from.as_str())
}

/// Milliseconds when timing is on, else `NA` so reports stay byte-stable.
pub fn wall_ms(elapsed: std::time::Duration, timings: bool) -> String {
    if timings {
        elapsed.as_millis().to_string()
    } else {
        "NA".into()
    }
}

/// Splits a report back into `(header, rows, summary)`.
pub fn parse(text: &str) -> Result<ParsedReport> {
    let mut parsed = ParsedReport::default();
    let mut body = String::new();
    let mut seen_table = false;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            if let Some((k, v)) = rest.split_once(" = ").filter(|_| !seen_table) {
                parsed.header.push((k.into(), v.into()));
            } else if let Some((k, v)) = rest.split_once(": ") {
                parsed.summary.push((k.into(), v.into()));
            }
        } else {
            seen_table = true;
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut r = csv::Reader::from_reader(body.as_bytes());
    parsed.columns = r
        .headers()
        .map_err(|e| AppError::format("csv", e))?
        .iter()
        .map(String::from)
        .collect();
    for rec in r.records() {
        let rec = rec.map_err(|e| AppError::format("csv", e))?;
        parsed.rows.push(rec.iter().map(String::from).collect());
    }
    Ok(parsed)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedReport {
    pub header: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<(String, String)>,
}

impl ParsedReport {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn cell(&self, row: usize, name: &str) -> Option<&str> {
        self.rows.get(row)?.get(self.column(name)?).map(String::as_str)
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn header_value(&self, key: &str) -> Option<&str> {
        self.header.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}
