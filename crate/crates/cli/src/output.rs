//! Result envelope and the two output formats.

use obstructor::arith::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rationals travel as `"num/den"`, integers included.
pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Flat rows for CSV output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a subcommand produces. `violation` is set when a computed table
/// contradicts a proven statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub results: Value,
    pub table: Table,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// `serde_json` maps are ordered by key, so the serialized envelope is
/// deterministic.
pub fn envelope(command: &str, inputs: &Map<String, Value>, results: &Value, cache_hit: bool) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "tool_version": TOOL_VERSION,
        "cache_hit": cache_hit,
    })
}

pub fn render(format: Format, envelope: &Value, table: &Table) -> Result<String, csv::Error> {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(envelope).expect("json values serialize"))),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
        }
    }
}
