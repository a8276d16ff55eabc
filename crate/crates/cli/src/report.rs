//! Tabular results and their CSV / JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Text(String),
    /// Not applicable: an empty CSV field, `null` in JSON.
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            // non-finite values become null
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// The result of one command: a table plus the configuration that produced
/// it, and whether every check in it passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub config: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub passed: bool,
}

impl Report {
    pub fn new(config: Value, header: &[&str]) -> Self {
        Self {
            config,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (h, c) in self.header.iter().zip(row) {
                    obj.insert(h.clone(), c.json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("config".into(), self.config.clone());
        doc.insert("rows".into(), Value::Array(rows));
        doc.insert("passed".into(), Value::Bool(self.passed));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_and_numbers() {
        let mut r = Report::new(Value::Null, &["a", "b", "c"]);
        r.push(vec![1.5.into(), "x,y".into(), f64::INFINITY.into()]);
        assert_eq!(r.render(Format::Csv), "a,b,c\n1.5,\"x,y\",inf\n");
    }

    #[test]
    fn json_embeds_config_and_nulls_non_finite() {
        let mut r = Report::new(serde_json::json!({"seed": 3}), &["v"]);
        r.push(vec![f64::NAN.into()]);
        let doc: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(doc["config"]["seed"], 3);
        assert!(doc["rows"][0]["v"].is_null());
    }
}
