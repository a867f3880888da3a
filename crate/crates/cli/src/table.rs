//! Output tables and their JSON / CSV encodings.
//!
//! JSON is emitted from `serde_json::Value`, whose maps are ordered by key, so
//! parsing an emitted document and re-emitting it reproduces it byte for byte.

use std::collections::BTreeSet;

use clap::ValueEnum;
use qgenocchi::scalar::format_exact;
use qgenocchi::ExactScalar;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub type Row = Map<String, Value>;

#[derive(Debug, Clone)]
pub struct Table {
    pub command: String,
    pub params: Row,
    pub rows: Vec<Row>,
    /// Only audits carry a summary.
    pub summary: Option<Row>,
}

impl Table {
    pub fn new(command: &str, params: Row) -> Self {
        Table {
            command: command.to_string(),
            params,
            rows: Vec::new(),
            summary: None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("params".into(), Value::Object(self.params.clone()));
        top.insert(
            "rows".into(),
            Value::Array(self.rows.iter().cloned().map(Value::Object).collect()),
        );
        if let Some(summary) = &self.summary {
            top.insert("summary".into(), Value::Object(summary.clone()));
        }
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        render_json(&self.to_value())
    }

    /// Rows only; the header is the sorted union of row keys.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let columns: BTreeSet<&String> = self.rows.iter().flat_map(|r| r.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&columns)?;
        for row in &self.rows {
            w.write_record(
                columns
                    .iter()
                    .map(|c| row.get(*c).map(cell).unwrap_or_default()),
            )?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn exact(r: &ExactScalar) -> Value {
    Value::String(format_exact(r))
}

pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Builds a row from `(key, value)` pairs.
#[macro_export]
macro_rules! row {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = $crate::table::Row::new();
        $(m.insert(String::from($k), serde_json::Value::from($v));)*
        m
    }};
}
