//! Text, TSV and JSON rendering of command results.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

/// Ordered key/value summary plus an optional table.
#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
    table_key: String,
}

impl Report {
    pub fn new() -> Report {
        Report { table_key: "rows".into(), ..Default::default() }
    }

    pub fn field(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    pub fn table(&mut self, key: &str, columns: &[&str]) -> &mut Self {
        self.table_key = key.to_string();
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        self.rows.push(cells);
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => {
                let mut m = Map::new();
                for (k, v) in &self.fields {
                    m.insert(k.clone(), v.clone());
                }
                if !self.columns.is_empty() {
                    let rows = self
                        .rows
                        .iter()
                        .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                        .collect();
                    m.insert(self.table_key.clone(), Value::Array(rows));
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = String::new();
                if self.columns.is_empty() {
                    for (k, v) in &self.fields {
                        s += &format!("{k}\t{}\n", plain(v));
                    }
                } else {
                    for (k, v) in &self.fields {
                        s += &format!("# {k}\t{}\n", plain(v));
                    }
                    s += &self.columns.join("\t");
                    s.push('\n');
                    for r in &self.rows {
                        s += &r.iter().map(plain).collect::<Vec<_>>().join("\t");
                        s.push('\n');
                    }
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                let w = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    s += &format!("{k:<w$}  {}\n", plain(v));
                }
                if !self.columns.is_empty() {
                    let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
                    let widths: Vec<usize> = (0..self.columns.len())
                        .map(|c| cells.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
                        .collect();
                    let line = |xs: &[String]| {
                        xs.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
                    };
                    if !self.fields.is_empty() {
                        s.push('\n');
                    }
                    s += &line(&self.columns);
                    s.push('\n');
                    for r in &cells {
                        s += &line(r);
                        s.push('\n');
                    }
                }
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
