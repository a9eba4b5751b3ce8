//! Plain-text matrix and edge-list formats.
//!
//! Matrix file:
//!
//! ```text
//! n 3
//! 2 -1 0
//! -1 2 -1
//! 0 -1 2
//! ```
//!
//! Edge list: an `n <count>` header, then one `u v` pair per line with
//! 0-based node ids. In both formats `#` starts a comment and blank lines are
//! ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dkbound_core::{Graph, Matrix, SymMatrix};

use crate::error::{CliError, CliResult};

/// Largest asymmetry that is silently averaged away.
pub const SYMMETRY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedMatrix {
    pub matrix: SymMatrix,
    /// Largest `|m_ij − m_ji|` found in the file.
    pub asymmetry: f64,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize, String> {
    let (no, line) = lines.next().ok_or("empty file, expected header 'n <count>'")?;
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next().map(str::parse::<usize>), parts.next()) {
        (Some("n"), Some(Ok(n)), None) => Ok(n),
        _ => Err(format!("line {no}: expected header 'n <count>', found '{line}'")),
    }
}

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, String> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    if n == 0 {
        return Err("matrix dimension must be at least 1".into());
    }
    let mut data = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (no, line) in lines {
        if rows == n {
            return Err(format!("line {no}: more than {n} rows"));
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let x: f64 = tok.parse().map_err(|_| format!("line {no}: '{tok}' is not a number"))?;
            if !x.is_finite() {
                return Err(format!("line {no}: non-finite value '{tok}'"));
            }
            data.push(x);
        }
        if data.len() - before != n {
            return Err(format!("line {no}: expected {n} values, found {}", data.len() - before));
        }
        rows += 1;
    }
    if rows != n {
        return Err(format!("expected {n} rows, found {rows}"));
    }
    let m = Matrix::from_row_major(n, n, data).map_err(|e| e.to_string())?;
    let asymmetry = m.max_asymmetry().unwrap_or(0.0);
    if asymmetry >= SYMMETRY_TOL {
        return Err(format!("matrix is not symmetric (max |m_ij - m_ji| = {asymmetry:e})"));
    }
    let matrix = SymMatrix::new(m).map_err(|e| e.to_string())?;
    Ok(ParsedMatrix { matrix, asymmetry })
}

pub fn read_matrix(path: &Path) -> CliResult<ParsedMatrix> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_matrix(&text).map_err(|message| CliError::Parse { path: path.into(), message })
}

pub fn format_matrix(m: &SymMatrix) -> String {
    let n = m.n();
    let mut out = format!("n {n}\n");
    for i in 0..n {
        let row: Vec<String> = m.as_matrix().row(i).iter().map(|&x| (x + 0.0).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_matrix(path: &Path, m: &SymMatrix) -> CliResult<()> {
    fs::write(path, format_matrix(m)).map_err(|e| CliError::io(path, e))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, String> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut edges = Vec::new();
    for (no, line) in lines {
        let ids: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = ids.as_slice() else {
            return Err(format!("line {no}: expected 'u v', found '{line}'"));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|_| format!("line {no}: '{t}' is not a node id"));
        edges.push((parse(u)?, parse(v)?));
    }
    Graph::new(n, edges).map_err(|e| e.to_string())
}

pub fn read_edge_list(path: &Path) -> CliResult<Graph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_edge_list(&text).map_err(|message| CliError::Parse { path: path.into(), message })
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
