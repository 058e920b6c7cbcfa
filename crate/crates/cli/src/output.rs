//! Tables rendered as CSV (blank line between sections) or JSON.

use cki_core::Real;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Cell {
    text: String,
    json: Value,
}

impl Cell {
    pub fn real<R: Real>(v: R) -> Self {
        let f = v.as_f64();
        Cell { text: v.format(), json: Number::from_f64(f).map_or(Value::Null, Value::Number) }
    }

    pub fn float(v: f64) -> Self {
        Cell::real(v)
    }

    pub fn int(v: i64) -> Self {
        Cell { text: v.to_string(), json: Value::from(v) }
    }

    pub fn text(v: impl Into<String>) -> Self {
        let v = v.into();
        Cell { json: Value::String(v.clone()), text: v }
    }

    pub fn flag(v: bool) -> Self {
        Cell { text: v.to_string(), json: Value::Bool(v) }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Table { name, columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.columns.iter().cloned().zip(row.iter().map(|c| c.json.clone())).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// One table renders as a bare array; several as an object keyed by table name.
pub fn render(tables: &[Table], format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            for (i, table) in tables.iter().enumerate() {
                if i > 0 {
                    buf.push(b'\n');
                }
                let mut w = csv::Writer::from_writer(buf);
                w.write_record(&table.columns).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row.iter().map(|c| c.text.as_str())).map_err(|e| e.to_string())?;
                }
                buf = w.into_inner().map_err(|e| e.to_string())?;
            }
            Ok(buf)
        }
        Format::Json => {
            let value = match tables {
                [single] => single.to_json(),
                many => Value::Object(many.iter().map(|t| (t.name.to_string(), t.to_json())).collect()),
            };
            let mut buf = serde_json::to_vec_pretty(&value).map_err(|e| e.to_string())?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}
