//! The `cplx v1` text format.
//!
//! ```text
//! # cplx v1
//! dim 2
//! s 0 1 2
//! s 2 3
//! ```
//!
//! The `dim` header carries the degree bound. Each `s` line lists one
//! simplex; faces are implied. `#` starts a comment.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::complex::{build_complex, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses a complex; every error names a 1-based line.
pub fn read_cplx(text: &str) -> Result<SimplicialComplex> {
    let mut degree_bound: Option<usize> = None;
    let mut tuples: Vec<Vec<Vertex>> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().expect("content is nonempty");
        match (head, degree_bound) {
            ("dim", None) => {
                let value = words.next().ok_or_else(|| parse_error(line, "missing value after `dim`"))?;
                let d: usize = value.parse().map_err(|_| parse_error(line, format!("bad degree bound {value:?}")))?;
                if d == 0 {
                    return Err(parse_error(line, "degree bound must be positive"));
                }
                if let Some(extra) = words.next() {
                    return Err(parse_error(line, format!("unexpected {extra:?} after degree bound")));
                }
                degree_bound = Some(d);
            }
            ("dim", Some(_)) => return Err(parse_error(line, "repeated `dim` header")),
            (_, None) => return Err(parse_error(line, "expected `dim <d>` header first")),
            ("s", Some(_)) => {
                let mut tuple = Vec::new();
                let mut seen = HashSet::new();
                for w in words {
                    let v: Vertex = w.parse().map_err(|_| parse_error(line, format!("bad vertex id {w:?}")))?;
                    if !seen.insert(v) {
                        return Err(parse_error(line, format!("vertex {v} repeated")));
                    }
                    tuple.push(v);
                }
                if tuple.is_empty() {
                    return Err(parse_error(line, "simplex with no vertices"));
                }
                tuples.push(tuple);
                lines.push(line);
            }
            (other, Some(_)) => return Err(parse_error(line, format!("unknown record {other:?}"))),
        }
    }
    let d = degree_bound.ok_or_else(|| parse_error(last_line.max(1), "missing `dim <d>` header"))?;
    build_complex(&tuples, d).map_err(|e| locate(e, &tuples, &lines, d))
}

/// Attaches the offending line to a validation error.
fn locate(e: Error, tuples: &[Vec<Vertex>], lines: &[usize], d: usize) -> Error {
    match &e {
        Error::DuplicateSimplex(s) => {
            let hits: Vec<usize> = (0..tuples.len()).filter(|&t| Simplex::new(tuples[t].iter().copied()) == *s).collect();
            let at = hits.get(1).or(hits.first()).map_or(0, |&t| lines[t]);
            parse_error(at, e.to_string())
        }
        Error::DegreeExceeded(v) => {
            // the line whose edges push `v` past the bound
            let mut edges: HashMap<Vertex, HashSet<Vertex>> = HashMap::new();
            for (t, tuple) in tuples.iter().enumerate() {
                for &a in tuple {
                    for &b in tuple {
                        if a != b {
                            edges.entry(a).or_default().insert(b);
                        }
                    }
                }
                if edges.get(v).is_some_and(|s| s.len() > d) {
                    return parse_error(lines[t], e.to_string());
                }
            }
            parse_error(0, e.to_string())
        }
        _ => parse_error(lines.first().copied().unwrap_or(0), e.to_string()),
    }
}

/// Canonical text: version comment, header, maximal simplices in
/// lexicographic order.
pub fn write_cplx(k: &SimplicialComplex) -> String {
    let mut out = format!("# cplx v1\ndim {}\n", k.degree_bound());
    for s in k.maximal_simplices() {
        out.push('s');
        for v in s.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
