use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hyperspline::{Interpolant, Result as SplineResult};
use serde::Serialize;

use crate::Failure;

/// Round-trip decimal form (17 significant digits).
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub const COLUMNS: [&str; 4] = ["x", "v", "d1", "d2"];

/// Samples `spline` and its first `derivs` derivatives on `grid`.
pub fn sample_rows<S: Interpolant + ?Sized>(spline: &S, grid: &[f64], derivs: usize) -> SplineResult<Vec<Vec<f64>>> {
    grid.iter()
        .map(|&x| {
            let mut row = vec![x];
            for k in 0..=derivs {
                row.push(spline.eval(x, k)?);
            }
            Ok(row)
        })
        .collect()
}

pub fn csv_table(columns: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

#[derive(Serialize)]
pub struct Table<'a> {
    pub columns: &'a [&'a str],
    pub rows: &'a [Vec<f64>],
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// `path` with `suffix` appended to its file name.
pub fn companion(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

pub fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes to `path`, or stdout without one.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
