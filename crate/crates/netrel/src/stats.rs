//! Per-run timing rows: `case,seed,solutions,conflicts,decisions,seconds`.

use std::fs::OpenOptions;
use std::path::Path;

use crate::error::{Error, Result};

pub const HEADER: [&str; 6] = ["case", "seed", "solutions", "conflicts", "decisions", "seconds"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    pub case_id: u8,
    pub seed: u64,
    pub solutions: usize,
    pub conflicts: u64,
    pub decisions: u64,
    pub seconds: f64,
}

impl RunStats {
    fn record(&self) -> [String; 6] {
        [
            self.case_id.to_string(),
            self.seed.to_string(),
            self.solutions.to_string(),
            self.conflicts.to_string(),
            self.decisions.to_string(),
            format!("{:.3}", self.seconds),
        ]
    }
}

/// Appends rows to `path`, writing the header first if the file is new or empty.
pub fn append_rows(path: &Path, rows: &[RunStats]) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::file(path, e))?;
    let empty = file.metadata().map_err(|e| Error::file(path, e))?.len() == 0;
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
    let csv_err = |e: csv::Error| Error::file(path, e.into());
    if empty {
        writer.write_record(HEADER).map_err(csv_err)?;
    }
    for row in rows {
        writer.write_record(row.record()).map_err(csv_err)?;
    }
    writer.flush().map_err(|e| Error::file(path, e))?;
    Ok(())
}
