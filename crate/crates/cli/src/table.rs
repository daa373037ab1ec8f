//! Row-oriented result tables written as CSV or JSON.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(usize),
    Bool(bool),
    Text(&'static str),
    Missing,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }

    /// Round-trip representation: 17 significant digits, no locale.
    fn csv_field(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => (*s).to_owned(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match *self {
            Cell::Float(x) => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(n),
            Cell::Bool(b) => Value::Bool(b),
            Cell::Text(s) => Value::from(s),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn write_to<W: Write>(&self, format: Format, out: W) -> CliResult<()> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    debug_assert_eq!(row.len(), self.header.len());
                    w.write_record(row.iter().map(Cell::csv_field))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(k, c)| ((*k).to_owned(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &rows).map_err(io::Error::from)?;
                out.write_all(b"\n")?;
                out.flush()?;
            }
        }
        Ok(())
    }

    /// Writes to `path`, or stdout when `None`.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> CliResult<()> {
        match path {
            Some(p) => self.write_to(format, BufWriter::new(File::create(p)?)),
            None => self.write_to(format, io::stdout().lock()),
        }
    }
}
