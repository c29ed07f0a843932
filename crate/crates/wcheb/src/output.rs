use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Rows for the CSV output, with a header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a subcommand produces: structured results and a table.
#[derive(Debug, Clone)]
pub struct Report {
    pub results: Value,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    subcommand: &'a str,
    config_echo: &'a Value,
    results: &'a Value,
}

pub fn render(format: Format, subcommand: &str, config_echo: &Value, report: &Report) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let env = Envelope { schema_version: SCHEMA_VERSION, subcommand, config_echo, results: &report.results };
            let mut bytes = serde_json::to_vec_pretty(&env)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.header)?;
            for row in &report.table.rows {
                w.write_record(row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
        }
    }
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// Shortest round-trip form, with an exponent for very large or small values.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
