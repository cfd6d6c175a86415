//! The `.hg` text format: `#` comments, a `k n` header, then one edge per
//! line as k space-separated vertex indices.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hpr_core::{Hypergraph, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum HgError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing \"k n\" header")]
    MissingHeader,
    #[error(transparent)]
    Invalid(#[from] hpr_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Accepts edges in any order and vertex order; rejects duplicate edges.
pub fn parse(text: &str) -> Result<Hypergraph, HgError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(str::parse::<u64>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| HgError::Syntax { line: i + 1, msg: e.to_string() })?;
        match header {
            None => {
                let [k, n] = nums[..] else {
                    return Err(HgError::Syntax { line: i + 1, msg: "header must be \"k n\"".into() });
                };
                header = Some((k as usize, n as usize));
            }
            Some(_) => {
                let e = nums
                    .iter()
                    .map(|&v| Vertex::try_from(v))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| HgError::Syntax { line: i + 1, msg: "vertex index too large".into() })?;
                edges.push(e);
            }
        }
    }
    let (k, n) = header.ok_or(HgError::MissingHeader)?;
    Ok(Hypergraph::new(k, n, &edges)?)
}

/// Header plus edges in lexicographic order.
pub fn format(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", h.k(), h.n()).unwrap();
    for e in h.edges_lex() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn load(path: &Path) -> Result<Hypergraph, HgError> {
    let text = fs::read_to_string(path).map_err(|source| HgError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn save(h: &Hypergraph, path: &Path) -> Result<(), HgError> {
    fs::write(path, format(h)).map_err(|source| HgError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_any_order() {
        let h = parse("# two edges\n3 5\n4 3 2\n\n0 1 2\n").unwrap();
        assert_eq!(format(&h), "3 5\n0 1 2\n2 3 4\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("3 5\n0 1 2\n2 1 0\n"), Err(HgError::Invalid(_))));
        assert!(matches!(parse("# nothing\n"), Err(HgError::MissingHeader)));
        assert!(matches!(parse("3\n"), Err(HgError::Syntax { line: 1, .. })));
        assert!(matches!(parse("3 5\n0 1 x\n"), Err(HgError::Syntax { line: 2, .. })));
        assert!(parse("3 5\n0 1 5\n").is_err());
    }
}
