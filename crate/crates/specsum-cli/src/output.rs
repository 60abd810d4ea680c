//! CSV writing. Every file starts with a comment line naming the manifest
//! hash of the run that produced it, then a header row. Floats are printed
//! with 17 significant digits so values round-trip exactly.

use std::fmt::Write as _;
use std::path::Path;

use specsum_core::SupResult;

use crate::error::CliError;

pub struct CsvWriter {
    buffer: String,
}

impl CsvWriter {
    pub fn new(manifest_hash: &str, header: &[&str]) -> CsvWriter {
        let mut buffer = String::new();
        let _ = writeln!(buffer, "# manifest {manifest_hash}");
        let _ = writeln!(buffer, "{}", header.join(","));
        CsvWriter { buffer }
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.buffer, "{}", fields.join(","));
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, &self.buffer)?;
        Ok(())
    }
}

pub fn float_field(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn sup_field(sup: &SupResult) -> String {
    match sup {
        SupResult::Finite(v) => float_field(*v),
        SupResult::Infinite => "inf".to_string(),
        SupResult::LowerBound(v) => format!(">={}", float_field(*v)),
    }
}
