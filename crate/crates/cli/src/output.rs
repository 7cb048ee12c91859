use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exact integer as a JSON number, digits preserved.
pub fn num(x: &impl Display) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

pub fn str(x: &impl Display) -> Value {
    Value::String(x.to_string())
}

/// One command's result in every output format it supports.
pub struct Report {
    pub command: &'static str,
    /// Verification outcome; `false` maps to exit status 1.
    pub ok: bool,
    pub text: String,
    pub json: Map<String, Value>,
    pub csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(command: &'static str, text: impl Into<String>, json: Value) -> Self {
        let Value::Object(json) = json else { panic!("report payload must be an object") };
        Self { command, ok: true, text: text.into(), json, csv: None }
    }

    pub fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn with_csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some((header, rows));
        self
    }

    pub fn emit(&self, format: Format, seed: u64, out: &mut impl Write) -> Result<(), CliError> {
        match format {
            Format::Text => writeln!(out, "{}", self.text.trim_end())?,
            Format::Json => {
                let mut doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "seed": seed,
                    "ok": self.ok,
                });
                doc.as_object_mut().expect("object").extend(self.json.clone());
                serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let Some((header, rows)) = &self.csv else {
                    return Err(CliError::Usage(format!("`{}` has no CSV output; use --format text or json", self.command)));
                };
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(header).map_err(io::Error::from)?;
                for row in rows {
                    w.write_record(row).map_err(io::Error::from)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
