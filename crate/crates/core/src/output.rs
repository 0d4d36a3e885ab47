//! CSV, JSON metadata and gnuplot script emission.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

/// Writes a CSV file with RFC 4180 quoting.
pub fn write_csv<R: AsRef<[String]>>(path: &Path, header: &[&str], rows: &[R]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.as_ref())?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-trip formatting, so identical inputs give byte-identical files.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

/// `meta.json` contents: parameters, truncation bounds, timing and version.
#[derive(Debug, Serialize)]
pub struct Meta {
    pub command: String,
    pub code_version: &'static str,
    pub parameters: Value,
    pub truncation_bounds: Value,
    pub outputs: Vec<String>,
    pub wall_time_s: f64,
}

impl Meta {
    pub fn new(command: &str, parameters: Value) -> Self {
        Self {
            command: command.to_string(),
            code_version: env!("CARGO_PKG_VERSION"),
            parameters,
            truncation_bounds: json!({}),
            outputs: Vec::new(),
            wall_time_s: 0.0,
        }
    }
}

/// A gnuplot script plotting columns `x_col`, `y_col` of a comma-separated file.
pub fn write_gnuplot(path: &Path, csv_name: &str, x_col: usize, y_col: usize, title: &str, logscale: bool) -> Result<PathBuf> {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set title \"{title}\"\n"));
    if logscale {
        s.push_str("set logscale xy\n");
    }
    s.push_str(&format!("plot '{csv_name}' every ::1 using {x_col}:{y_col} with linespoints title \"{title}\"\n"));
    fs::write(path, s)?;
    Ok(path.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_fields() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_csv(&p, &["a", "b"], &[vec!["1".to_string(), "x,y".to_string()]]).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "a,b\r\n1,\"x,y\"\r\n");
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 6.0 / std::f64::consts::PI.powi(2), -2.5e-17] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
