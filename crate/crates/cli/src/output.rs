//! Artifact writers: CSV with 17-significant-digit floats (lossless,
//! diff-able) and JSON summaries. Files are written in one shot so reruns
//! with the same configuration are byte-identical.

use serde::Serialize;
use slowdiff::{Error, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

/// Render a float with 17 significant digits (round-trips exactly).
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A rectangular data table destined for a data artifact.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            let mut obj = String::from("  {");
            for (j, (col, val)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    obj.push_str(", ");
                }
                let _ = write!(obj, "{:?}: {:?}", col, val);
            }
            obj.push('}');
            if i + 1 < self.rows.len() {
                obj.push(',');
            }
            out.push_str(&obj);
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }
}

pub struct Writer {
    out_dir: PathBuf,
    format: Format,
}

impl Writer {
    pub fn new(out_dir: &Path, format: Format) -> Result<Self> {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", out_dir.display())))?;
        Ok(Self { out_dir: out_dir.to_path_buf(), format })
    }

    pub fn write_table(&self, name: &str, table: &Table) -> Result<PathBuf> {
        let (ext, body) = match self.format {
            Format::Csv => ("csv", table.to_csv()),
            Format::Json => ("json", table.to_json()),
        };
        let path = self.out_dir.join(format!("{name}.{ext}"));
        std::fs::write(&path, body)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn write_summary<T: Serialize>(&self, name: &str, summary: &T) -> Result<PathBuf> {
        let path = self.out_dir.join(format!("{name}_summary.json"));
        let body = serde_json::to_string_pretty(summary)
            .map_err(|e| Error::Numeric(format!("summary serialization failed: {e}")))?;
        std::fs::write(&path, body + "\n")
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn write_error(&self, err: &Error) {
        let record = serde_json::json!({
            "kind": err.kind(),
            "exit_code": err.exit_code(),
            "message": err.to_string(),
        });
        let _ = std::fs::write(
            self.out_dir.join("error.json"),
            serde_json::to_string_pretty(&record).unwrap_or_default() + "\n",
        );
    }
}
