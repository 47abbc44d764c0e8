//! Output plumbing. JSON is compact with sorted keys, so repeated runs are
//! byte-identical; tables are derived from the same JSON value.

use serde_json::Value;
use std::io::Write;
use std::path::Path;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

pub struct Output {
    pub value: Value,
    /// DOT text, present only for commands that have a graph rendering.
    pub dot: Option<String>,
}

impl Output {
    pub fn json(value: Value) -> Self {
        Output { value, dot: None }
    }
}

pub fn emit(output: &Output, format: Format, out: Option<&Path>) -> Result<(), String> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string(&output.value).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Dot => output
            .dot
            .clone()
            .ok_or("this command has no dot rendering; use --format json or table")?,
        Format::Table => table(&output.value),
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| e.to_string())
        }
    }
}

/// Text rendering of an arbitrary JSON value. Arrays of objects become
/// aligned column tables; everything else becomes indented `key: value`
/// lines. Scalars inside cells print as-is, nested structure prints as
/// compact JSON.
pub fn table(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        out.push_str(&grid(items, indent + 1));
                    }
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", cell(val))),
                }
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            out.push_str(&grid(items, indent));
        }
        other => out.push_str(&format!("{pad}{}\n", cell(other))),
    }
}

fn grid(items: &[Value], indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut columns: Vec<String> = Vec::new();
    for item in items {
        if let Value::Object(map) = item {
            for key in map.keys() {
                if !columns.iter().any(|c| c == key) {
                    columns.push(key.clone());
                }
            }
        }
    }
    let mut rows: Vec<Vec<String>> = vec![columns.clone()];
    for item in items {
        let row = match item {
            Value::Object(map) => columns
                .iter()
                .map(|c| map.get(c).map_or(String::new(), cell))
                .collect(),
            other => {
                let mut row = vec![cell(other)];
                row.resize(columns.len(), String::new());
                row
            }
        };
        rows.push(row);
    }
    let widths: Vec<usize> = (0..columns.len())
        .map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(&format!("{pad}{}\n", line.trim_end()));
    }
    out
}

fn cell(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
