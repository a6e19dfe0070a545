//! CSV and JSON artifact writing.

use std::io::Write;
use std::path::{Path, PathBuf};

use bilayer_core::CaseDefinition;
use serde::Serialize;

use crate::error::CliError;

/// Twelve significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.11e}")
}

/// A CSV table with `#` metadata lines above the header row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = Vec::new();
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}").unwrap();
        }
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&self.header).unwrap();
            for r in &self.rows {
                w.write_record(r).unwrap();
            }
            w.flush().unwrap();
        }
        String::from_utf8(out).unwrap()
    }
}

/// Metadata lines describing a case.
pub fn case_meta(table: &mut Table, case: &CaseDefinition) {
    let p = &case.params;
    table.meta("case", format!("{} ({})", p.kind, p.kind.describe()));
    let mut params = Vec::new();
    if let Some(w) = p.omega {
        params.push(format!("omega={w}"));
    }
    if let Some(a) = p.alpha {
        params.push(format!("alpha={a}"));
    }
    if let Some(d) = p.d {
        params.push(format!("D={d}"));
    }
    params.push(format!("k={}", p.k));
    params.push(format!("kappa={}", p.kappa));
    params.push(format!("B0={}", p.b0));
    table.meta("parameters", params.join(", "));
    table.meta("domain", case.domain);
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap();
    s.push('\n');
    s
}

/// Writes to `out`, or to standard output when no path is given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<String, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(path.display().to_string())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(CliError::Stdout)?;
            Ok("standard output".into())
        }
    }
}

/// `dir/stem-suffix.ext` next to `path`.
pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{suffix}"),
    };
    path.with_file_name(name)
}
