//! Tabular output shared by every subcommand.
//!
//! Commands produce one or more [`OutputRecord`] sections and render them as
//! CSV (comma separator, `\n` line endings, header always present, numbers
//! as the shortest decimal that round-trips the 64-bit value) or JSON (same
//! values; absent fields omitted). Identical inputs render byte-identical
//! output.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(&'static str),
    /// Not applicable: empty CSV field, omitted JSON key.
    Empty,
}

impl Cell {
    pub fn optional_float(value: Option<f64>) -> Self {
        value.map_or(Cell::Empty, Cell::Float)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => (*s).to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Option<Value> {
        match self {
            Cell::Int(v) => Some((*v).into()),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map(Value::Number),
            Cell::Text(s) => Some((*s).into()),
            Cell::Empty => None,
        }
    }
}

/// One tabular section: fixed columns, rows of cells in column order.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub schema: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Render as a bare JSON object (single-row sections) instead of an array.
    pub single: bool,
}

impl OutputRecord {
    pub fn table(schema: &'static str, columns: Vec<String>, rows: Vec<Vec<Cell>>) -> Self {
        Self { schema, columns, rows, single: false }
    }

    pub fn single_row(schema: &'static str, columns: Vec<String>, row: Vec<Cell>) -> Self {
        Self { schema, columns, rows: vec![row], single: true }
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (column, cell) in self.columns.iter().zip(row) {
                    if let Some(value) = cell.json() {
                        object.insert(column.clone(), value);
                    }
                }
                Value::Object(object)
            })
            .collect();
        if self.single {
            rows.into_iter().next().unwrap_or(Value::Null)
        } else {
            Value::Array(rows)
        }
    }
}

/// A command's complete output: one or more sections.
#[derive(Debug, Clone)]
pub struct Payload {
    pub sections: Vec<OutputRecord>,
}

impl Payload {
    pub fn of(record: OutputRecord) -> Self {
        Self { sections: vec![record] }
    }

    /// CSV: sections separated by a blank line. JSON: a lone section renders
    /// bare; multiple sections nest under their schema names.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let parts: Vec<String> = self.sections.iter().map(OutputRecord::to_csv).collect();
                parts.join("\n")
            }
            Format::Json => {
                let value = if self.sections.len() == 1 {
                    self.sections[0].to_json()
                } else {
                    let mut object = Map::new();
                    for section in &self.sections {
                        object.insert(section.schema.to_string(), section.to_json());
                    }
                    Value::Object(object)
                };
                let mut text = serde_json::to_string_pretty(&value).expect("finite values");
                text.push('\n');
                text
            }
        }
    }
}
