//! The `.uhg` text format.
//!
//! ```text
//! # comment
//! m n q
//! v1 v2 .. vm      (q lines, 1-based labels)
//! ```
//!
//! Blank lines and lines starting with `#` are skipped anywhere.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use hyperee_core::UniformHypergraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing header `m n q`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("not a nonnegative integer: `{0}`")]
    BadInteger(String),
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("edge has {found} vertices, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} repeated within the edge")]
    RepeatedVertex(usize),
    #[error("duplicate edge (first seen on line {first})")]
    DuplicateEdge { first: usize },
    #[error("header promises {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// A parse failure pinned to a 1-based line (0 when the input ended early).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn integers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| err(line, ParseErrorKind::BadInteger(tok.to_string())))
        })
        .collect()
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(err(0, ParseErrorKind::MissingHeader))?;
    let fields = integers(hline, header)?;
    let [m, n, q] = fields[..] else {
        return Err(err(
            hline,
            ParseErrorKind::BadHeader(format!("expected 3 integers, found {}", fields.len())),
        ));
    };
    if m < 2 {
        return Err(err(hline, ParseErrorKind::BadUniformity(m)));
    }
    if n == 0 {
        return Err(err(hline, ParseErrorKind::NoVertices));
    }

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut first_line = std::collections::HashMap::new();
    let mut edges = Vec::with_capacity(q);
    for (line, body) in lines {
        if edges.len() == q {
            return Err(err(
                line,
                ParseErrorKind::EdgeCount {
                    expected: q,
                    found: q + 1,
                },
            ));
        }
        let mut edge = integers(line, body)?;
        if edge.len() != m {
            return Err(err(
                line,
                ParseErrorKind::Arity {
                    expected: m,
                    found: edge.len(),
                },
            ));
        }
        for &v in &edge {
            if v == 0 || v > n {
                return Err(err(line, ParseErrorKind::OutOfRange { vertex: v, n }));
            }
        }
        edge.sort_unstable();
        if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
            return Err(err(line, ParseErrorKind::RepeatedVertex(w[0])));
        }
        let zero_based: Vec<usize> = edge.iter().map(|v| v - 1).collect();
        if !seen.insert(zero_based.clone()) {
            return Err(err(
                line,
                ParseErrorKind::DuplicateEdge {
                    first: first_line[&zero_based],
                },
            ));
        }
        first_line.insert(zero_based.clone(), line);
        edges.push(zero_based);
    }
    if edges.len() != q {
        return Err(err(
            0,
            ParseErrorKind::EdgeCount {
                expected: q,
                found: edges.len(),
            },
        ));
    }
    // Everything `new` checks has been checked above with line context.
    Ok(UniformHypergraph::new(m, n, edges).expect("validated edge list"))
}

/// Canonical text: header then edges in lexicographic order, 1-based.
pub fn serialize_hypergraph(h: &UniformHypergraph) -> String {
    let mut out = format!(
        "{} {} {}\n",
        h.uniformity(),
        h.vertex_count(),
        h.edge_count()
    );
    for e in h.edges() {
        let labels: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

pub fn read_hypergraph(path: &Path) -> Result<UniformHypergraph, ReadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_hypergraph(&text).map_err(|source| ReadError::Parse {
        path: shown,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperee_core::gen_hyperstar;

    #[test]
    fn examples() {
        let one = parse_hypergraph("3 3 1\n1 2 3\n").unwrap();
        assert_eq!(one, gen_hyperstar(3, 1).unwrap());
        let empty = parse_hypergraph("3 5 0\n").unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.vertex_count(), 5);
        let star = parse_hypergraph("# centre 3\n3 5 2\n\n1 2 3\n3 4 5\n").unwrap();
        assert_eq!(
            star.is_isomorphic(&gen_hyperstar(3, 2).unwrap()),
            Some(true)
        );
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("", 0, ParseErrorKind::MissingHeader),
            (
                "3 3\n",
                1,
                ParseErrorKind::BadHeader("expected 3 integers, found 2".into()),
            ),
            ("1 3 0\n", 1, ParseErrorKind::BadUniformity(1)),
            ("3 0 0\n", 1, ParseErrorKind::NoVertices),
            (
                "3 3 1\n1 2\n",
                2,
                ParseErrorKind::Arity {
                    expected: 3,
                    found: 2,
                },
            ),
            (
                "3 3 1\n#x\n1 2 4\n",
                3,
                ParseErrorKind::OutOfRange { vertex: 4, n: 3 },
            ),
            (
                "3 3 1\n1 2 0\n",
                2,
                ParseErrorKind::OutOfRange { vertex: 0, n: 3 },
            ),
            ("3 3 1\n1 2 2\n", 2, ParseErrorKind::RepeatedVertex(2)),
            (
                "3 4 2\n1 2 3\n3 2 1\n",
                3,
                ParseErrorKind::DuplicateEdge { first: 2 },
            ),
            ("3 3 1\n1 x 3\n", 2, ParseErrorKind::BadInteger("x".into())),
            (
                "3 3 2\n1 2 3\n",
                0,
                ParseErrorKind::EdgeCount {
                    expected: 2,
                    found: 1,
                },
            ),
            (
                "3 3 0\n1 2 3\n",
                2,
                ParseErrorKind::EdgeCount {
                    expected: 0,
                    found: 1,
                },
            ),
        ];
        for (text, line, kind) in cases {
            assert_eq!(
                parse_hypergraph(text),
                Err(ParseError { line, kind }),
                "{text:?}"
            );
        }
    }

    #[test]
    fn serialization_is_canonical() {
        let h = parse_hypergraph("3 5 2\n5 4 3\n3 1 2\n").unwrap();
        assert_eq!(serialize_hypergraph(&h), "3 5 2\n1 2 3\n3 4 5\n");
    }
}
