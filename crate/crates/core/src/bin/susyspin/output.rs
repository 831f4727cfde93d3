//! CSV/JSON rendering with a reproducibility trail: every artifact opens
//! with the tool version and the canonical flag string that produced it,
//! and floats are capped at 12 significant digits so reruns are
//! byte-identical.

use clap::ValueEnum;
use serde_json::{Map, Number, Value};
use susyspin::numfmt::fmt_g12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn flag_value(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

pub fn opt_num(v: Option<f64>) -> Cell {
    v.map_or(Cell::Empty, Cell::Num)
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_g12(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => {
                debug_assert!(!s.contains(',') && !s.contains('\n'));
                s.clone()
            }
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // Round through the 12-digit form so CSV and JSON agree.
            Cell::Num(v) => fmt_g12(*v)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

pub enum Payload {
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
    },
    /// key,value rows in CSV; a "report" object in JSON.
    Report(Vec<(&'static str, Cell)>),
}

/// A summary datum appended after the table: a `# label: value` comment
/// line in CSV, a top-level `key` field in JSON.
pub struct Extra {
    pub label: &'static str,
    pub key: &'static str,
    pub value: Cell,
}

pub struct Doc {
    pub command: &'static str,
    pub flags: String,
    pub payload: Payload,
    pub extras: Vec<Extra>,
    pub warnings: Vec<String>,
}

impl Doc {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = format!(
            "# susyspin v{} {} {}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.flags
        );
        match &self.payload {
            Payload::Table { columns, rows } => {
                out.push_str(&columns.join(","));
                out.push('\n');
                for row in rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Payload::Report(pairs) => {
                out.push_str("key,value\n");
                for (key, value) in pairs {
                    out.push_str(key);
                    out.push(',');
                    out.push_str(&value.csv());
                    out.push('\n');
                }
            }
        }
        for extra in &self.extras {
            out.push_str(&format!("# {}: {}\n", extra.label, extra.value.csv()));
        }
        for w in &self.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        out
    }

    fn render_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert("tool".into(), Value::from("susyspin"));
        meta.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        meta.insert("command".into(), Value::from(self.command));
        meta.insert("flags".into(), Value::from(self.flags.as_str()));
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        match &self.payload {
            Payload::Table { columns, rows } => {
                root.insert(
                    "columns".into(),
                    Value::from(columns.iter().map(|c| Value::from(*c)).collect::<Vec<_>>()),
                );
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|row| Value::from(row.iter().map(Cell::json).collect::<Vec<_>>()))
                    .collect();
                root.insert("rows".into(), Value::from(rows));
            }
            Payload::Report(pairs) => {
                let mut report = Map::new();
                for (key, value) in pairs {
                    report.insert((*key).into(), value.json());
                }
                root.insert("report".into(), Value::Object(report));
            }
        }
        for extra in &self.extras {
            root.insert(extra.key.into(), extra.value.json());
        }
        if !self.warnings.is_empty() {
            root.insert(
                "warnings".into(),
                Value::from(
                    self.warnings
                        .iter()
                        .map(|w| Value::from(w.as_str()))
                        .collect::<Vec<_>>(),
                ),
            );
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(root))
            .expect("serialization of plain values cannot fail");
        out.push('\n');
        out
    }
}
