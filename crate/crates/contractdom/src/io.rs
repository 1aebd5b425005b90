//! Edge-list text interchange: line 1 is "n m", then m lines "u v"
//! (0-indexed). Blank lines and '#' comments are ignored.

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("line {line}: expected {expected}, got {got:?}")]
    Malformed { line: usize, expected: &'static str, got: String },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut it = header.split_whitespace();
    let parse = |tok: Option<&str>, line: usize| -> Result<usize, ParseError> {
        tok.and_then(|t| t.parse().ok()).ok_or(ParseError::Malformed {
            line,
            expected: "two whitespace-separated integers",
            got: header.to_string(),
        })
    };
    let n = parse(it.next(), line)?;
    let m = parse(it.next(), line)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, ParseError> {
            tok.and_then(|t| t.parse().ok()).ok_or(ParseError::Malformed {
                line,
                expected: "edge line \"u v\"",
                got: l.to_string(),
            })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Canonical rendering: sorted edges, one per line.
pub fn format_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// SHA-256 of the canonical edge-list rendering.
pub fn graph_digest(g: &Graph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format_edge_list(g).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
