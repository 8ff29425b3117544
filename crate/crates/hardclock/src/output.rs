//! Rendering of result tables as CSV or JSON.
//!
//! Both formats are deterministic: floats are printed with 17 significant
//! digits (`{:.16e}`), which round-trips every finite `f64` exactly, entries
//! keep insertion order, and lines end with `\n`. Rerunning a command with
//! identical flags therefore reproduces its output byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use crate::args::Format;

/// One table cell or parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// A finite or non-finite float, rendered with full precision.
    Num(f64),
    /// An exact integer, rendered in decimal.
    Int(u64),
    /// A flag, rendered as `true` / `false` in both formats.
    Bool(bool),
    /// A short identifier (branch names, stability kinds).
    Text(String),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Value::Num(x) => format_float(*x),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            // JSON has no literal for non-finite floats; encode them as
            // strings so the document stays parseable.
            Value::Num(x) if !x.is_finite() => json_string(&format!("{x}")),
            Value::Num(x) => format_float(*x),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => json_string(s),
        }
    }
}

/// A finished result: named parameters, column names, and data rows.
#[derive(Debug, Clone, Default)]
pub struct Table {
    /// Effective parameter values, in presentation order.
    pub params: Vec<(&'static str, Value)>,
    /// Column names, matching each row's layout.
    pub columns: Vec<&'static str>,
    /// Data rows; every row has `columns.len()` cells.
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            params: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, name: &'static str, value: Value) {
        self.params.push((name, value));
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Renders the table in the requested format.
    ///
    /// CSV puts the parameters into `#`-prefixed metadata lines (dropped
    /// entirely under `no_meta`); JSON always carries them in `params`.
    pub fn render(&self, command: &str, format: Format, no_meta: bool) -> String {
        match format {
            Format::Csv => self.render_csv(command, no_meta),
            Format::Json => self.render_json(command),
        }
    }

    fn render_csv(&self, command: &str, no_meta: bool) -> String {
        let mut out = String::new();
        if !no_meta {
            let _ = writeln!(out, "# command: {command}");
            for (name, value) in &self.params {
                let _ = writeln!(out, "# {name}: {}", value.csv());
            }
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn render_json(&self, command: &str) -> String {
        let mut params = String::new();
        let _ = write!(params, "{}:{}", json_string("command"), json_string(command));
        for (name, value) in &self.params {
            let _ = write!(params, ",{}:{}", json_string(name), value.json());
        }
        let columns: Vec<String> = self.columns.iter().map(|c| json_string(c)).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(Value::json).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!(
            "{{\"params\":{{{params}}},\"columns\":[{}],\"rows\":[{}]}}\n",
            columns.join(","),
            rows.join(",")
        )
    }
}

/// Full-precision float form used by every emitter.
///
/// `{:.16e}` prints 17 significant digits, enough for an exact `f64`
/// round-trip, and its `1.2340000000000000e-1` shape is valid in both CSV
/// consumers and JSON.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Escapes and quotes a string for JSON.
pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Writes rendered output to the chosen destination.
pub fn deliver(content: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}
