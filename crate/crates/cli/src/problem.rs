//! Problem-file ingestion.
//!
//! The input format is JSON with rational strings:
//!
//! ```json
//! {"A": [["1", "0", "-2", "5"], ...], "b": ["1", "-1", "1"], "x": ["4/9", ...]}
//! ```
//!
//! Every scalar is `p`, `p/q` or a finite decimal, parsed exactly.
//! `b` and `x` are optional; each command checks for what it needs.

use l1cert_core::{parse_rational, Matrix, Vector};
use serde::Deserialize;
use std::fs;
use std::path::Path;

#[derive(Deserialize)]
struct RawProblem {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Option<Vec<String>>,
    x: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub a: Matrix,
    pub b: Option<Vector>,
    pub x: Option<Vector>,
}

fn parse_vector(entries: &[String], what: &str) -> Result<Vector, String> {
    entries
        .iter()
        .map(|s| parse_rational(s).map_err(|e| format!("{what}: {e}")))
        .collect()
}

pub fn load_problem(path: &Path) -> Result<ProblemFile, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let raw: RawProblem = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not a valid problem file: {e}", path.display()))?;
    if raw.a.is_empty() || raw.a[0].is_empty() {
        return Err(format!("{}: matrix A must be non-empty", path.display()));
    }
    let rows: Result<Vec<Vector>, String> = raw
        .a
        .iter()
        .enumerate()
        .map(|(i, row)| parse_vector(row, &format!("A row {i}")))
        .collect();
    let a = Matrix::from_rows(rows?).map_err(|e| format!("{}: {e}", path.display()))?;
    let b = match &raw.b {
        Some(entries) => {
            let v = parse_vector(entries, "b")?;
            if v.len() != a.rows() {
                return Err(format!(
                    "b has {} entries but A has {} rows",
                    v.len(),
                    a.rows()
                ));
            }
            Some(v)
        }
        None => None,
    };
    let x = match &raw.x {
        Some(entries) => {
            let v = parse_vector(entries, "x")?;
            if v.len() != a.cols() {
                return Err(format!(
                    "x has {} entries but A has {} columns",
                    v.len(),
                    a.cols()
                ));
            }
            Some(v)
        }
        None => None,
    };
    Ok(ProblemFile { a, b, x })
}

/// Loads a candidate solution from a separate file: a JSON array of
/// rational strings.
pub fn load_vector_file(path: &Path) -> Result<Vector, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let raw: Vec<String> = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not a JSON array of rational strings: {e}", path.display()))?;
    parse_vector(&raw, "x")
}
