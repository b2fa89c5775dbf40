//! Report artifacts: CSV with a versioned comment header, and a JSON mirror
//! with identical field ordering and number formatting.

use crate::error::Result;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(i64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            // shortest round-trip formatting, identical to the JSON encoding
            Cell::Num(v) => format_num(*v),
            Cell::Int(v) => v.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Text(s) => json_escape(s),
            Cell::Num(v) => format_num(*v),
            Cell::Int(v) => v.to_string(),
        }
    }
}

fn format_num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "Inf".into() } else { "-Inf".into() };
    }
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// One report: ordered config echo, column names, data rows.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn columns(&mut self, cols: &[&str]) -> &mut Self {
        self.columns = cols.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) -> &mut Self {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema={SCHEMA_VERSION}");
        let _ = writeln!(out, "# command={}", self.command);
        for (k, v) in &self.config {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\"schema\":{SCHEMA_VERSION},");
        let _ = write!(out, "\"command\":{},", json_escape(&self.command));
        let _ = write!(out, "\"config\":{{");
        for (i, (k, v)) in self.config.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}:{}", json_escape(k), json_escape(v));
        }
        let _ = write!(out, "}},\"columns\":[");
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&json_escape(c));
        }
        let _ = write!(out, "],\"rows\":[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&cell.json());
            }
            out.push(']');
        }
        out.push_str("]}");
        out
    }

    pub fn write(&self, path: &Path, json: bool) -> Result<()> {
        let body = if json { self.to_json() } else { self.to_csv() };
        std::fs::write(path, body)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_share_number_formatting() {
        let mut r = Report::new("demo");
        r.config("T", 1234.5);
        r.columns(&["alpha", "value"]);
        r.row(vec![Cell::Num(0.1), Cell::Num(1.0 / 3.0)]);
        let csv = r.to_csv();
        let json = r.to_json();
        assert!(csv.starts_with("# schema=1\n# command=demo\n# T=1234.5\n"));
        assert!(csv.contains("0.3333333333333333"));
        assert!(json.contains("0.3333333333333333"));
        assert!(json.starts_with("{\"schema\":1,"));
    }

    #[test]
    fn integers_stay_integers_and_floats_get_points() {
        let mut r = Report::new("demo");
        r.columns(&["n", "v"]);
        r.row(vec![Cell::Int(7), Cell::Num(2.0)]);
        let csv = r.to_csv();
        assert!(csv.contains("7,2.0"));
    }
}
