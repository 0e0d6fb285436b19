//! The `bcg` text format for part-labelled bipartite graphs.
//!
//! ```text
//! bcg 1
//! # comments and blank lines are ignored
//! 3 4
//! 0 0
//! 0 1
//! ```
//!
//! Line 1 (ignoring comments) is the version tag, the next line holds the
//! part sizes `a b`, and every further line is an edge `i j` joining
//! `(A, i)` to `(B, j)`. Edges are written sorted; on input any order is
//! accepted but duplicates are rejected.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use bipturan_core::graph::MAX_PART;
use bipturan_core::BipartiteGraph;

use crate::error::{Error, Result};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    BadHeader,
    UnsupportedVersion(String),
    MissingSizes,
    BadSizes,
    BadEdge,
    IndexOutOfRange,
    DuplicateEdge,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => f.write_str("missing `bcg` header"),
            ParseErrorKind::BadHeader => f.write_str("bad header, expected `bcg 1`"),
            ParseErrorKind::UnsupportedVersion(v) => write!(f, "unsupported version `{v}`"),
            ParseErrorKind::MissingSizes => f.write_str("missing part sizes"),
            ParseErrorKind::BadSizes => write!(f, "bad part sizes, expected two integers in 1..={MAX_PART}"),
            ParseErrorKind::BadEdge => f.write_str("bad edge, expected two integers"),
            ParseErrorKind::IndexOutOfRange => f.write_str("index out of range"),
            ParseErrorKind::DuplicateEdge => f.write_str("duplicate edge"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind}, line {line}")]
pub struct ParseError {
    /// 1-based, counting comment and blank lines.
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// A parsed file: the graph plus any comment lines, without their `#`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: BipartiteGraph,
    pub comments: Vec<String>,
}

pub fn write_graph(g: &BipartiteGraph) -> String {
    write_document::<&str>(g, &[])
}

/// Like [`write_graph`], with `# `-prefixed comment lines after the tag.
pub fn write_document<S: AsRef<str>>(g: &BipartiteGraph, comments: &[S]) -> String {
    let mut s = String::with_capacity(16 + 6 * g.edge_count());
    s.push_str("bcg 1\n");
    for c in comments {
        for line in c.as_ref().lines() {
            let _ = writeln!(s, "# {line}");
        }
    }
    let _ = writeln!(s, "{} {}", g.a(), g.b());
    // rows in order, columns in order: lexicographic
    for (i, j) in g.edges() {
        let _ = writeln!(s, "{i} {j}");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, ParseError> {
    parse_document(text).map(|d| d.graph)
}

pub fn parse_document(text: &str) -> Result<GraphDocument, ParseError> {
    let mut comments = Vec::new();
    let mut lines = text.lines().enumerate().filter_map(|(n, raw)| {
        let t = raw.trim();
        if let Some(c) = t.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            None
        } else if t.is_empty() {
            None
        } else {
            Some((n + 1, t))
        }
    });
    let err = |line, kind| ParseError { line, kind };

    let (n, header) = lines.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
    let mut tag = header.split_whitespace();
    match (tag.next(), tag.next(), tag.next()) {
        (Some("bcg"), Some("1"), None) => {}
        (Some("bcg"), Some(v), None) => return Err(err(n, ParseErrorKind::UnsupportedVersion(v.into()))),
        _ => return Err(err(n, ParseErrorKind::BadHeader)),
    }

    let (n, sizes) = lines.next().ok_or(err(n + 1, ParseErrorKind::MissingSizes))?;
    let (a, b) = two_numbers(sizes).ok_or(err(n, ParseErrorKind::BadSizes))?;
    let mut g = BipartiteGraph::new(a, b).map_err(|_| err(n, ParseErrorKind::BadSizes))?;

    for (n, line) in lines.by_ref() {
        let (i, j) = two_numbers(line).ok_or(err(n, ParseErrorKind::BadEdge))?;
        match g.add_edge(i, j) {
            Ok(true) => {}
            Ok(false) => return Err(err(n, ParseErrorKind::DuplicateEdge)),
            Err(_) => return Err(err(n, ParseErrorKind::IndexOutOfRange)),
        }
    }
    drop(lines);
    Ok(GraphDocument { graph: g, comments })
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(x)), Some(Ok(y)), None) => Some((x, y)),
        _ => None,
    }
}

pub fn read_graph_file(path: &Path) -> Result<BipartiteGraph> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    parse_graph(&text).map_err(|source| Error::Parse { path: path.into(), source })
}

pub fn write_graph_file(path: &Path, g: &BipartiteGraph) -> Result<()> {
    fs::write(path, write_graph(g)).map_err(|source| Error::Io { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bipturan_core::{complete_bipartite, path_extremal};

    #[test]
    fn writes_bit_exact() {
        let g = complete_bipartite(1, 2).unwrap();
        assert_eq!(write_graph(&g), "bcg 1\n1 2\n0 0\n0 1\n");
    }

    #[test]
    fn round_trips() {
        let g = path_extremal(3, 4, 3).unwrap();
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.rows(), g.rows());
    }

    #[test]
    fn out_of_range_reports_line() {
        let e = parse_graph("bcg 1\n2 2\n0 5\n").unwrap_err();
        assert_eq!(e.to_string(), "index out of range, line 3");
        assert_eq!(e.line, 3);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# made by hand\nbcg 1\n\n2 3\n# the edges\n1 2\n0 0\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.comments, vec!["made by hand", "the edges"]);
        assert_eq!(doc.graph.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 2)]);
        // line numbers still count the skipped lines
        assert_eq!(parse_graph("# x\nbcg 1\n2 2\n\n0 0\n0 0\n").unwrap_err().line, 6);
    }

    #[test]
    fn document_comments_are_written_after_the_tag() {
        let g = complete_bipartite(1, 1).unwrap();
        let text = write_document(&g, &["counterexample", "k = 3"]);
        assert_eq!(text, "bcg 1\n# counterexample\n# k = 3\n1 1\n0 0\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", ParseErrorKind::MissingHeader, 1),
            ("graph\n1 1\n", ParseErrorKind::BadHeader, 1),
            ("bcg 2\n1 1\n", ParseErrorKind::UnsupportedVersion("2".into()), 1),
            ("bcg 1\n", ParseErrorKind::MissingSizes, 2),
            ("bcg 1\n0 3\n", ParseErrorKind::BadSizes, 2),
            ("bcg 1\n33 3\n", ParseErrorKind::BadSizes, 2),
            ("bcg 1\n2 x\n", ParseErrorKind::BadSizes, 2),
            ("bcg 1\n2 2\n0\n", ParseErrorKind::BadEdge, 3),
            ("bcg 1\n2 2\n0 1 1\n", ParseErrorKind::BadEdge, 3),
            ("bcg 1\n2 2\n-1 0\n", ParseErrorKind::BadEdge, 3),
            ("bcg 1\n2 2\n1 1\n1 1\n", ParseErrorKind::DuplicateEdge, 4),
            ("bcg 1\n2 2\n2 0\n", ParseErrorKind::IndexOutOfRange, 3),
        ];
        for (text, kind, line) in cases {
            assert_eq!(parse_graph(text).unwrap_err(), ParseError { line, kind }, "{text:?}");
        }
    }

    #[test]
    fn edge_order_is_normalised() {
        let g = parse_graph("bcg 1\n2 2\n1 1\n0 1\n1 0\n").unwrap();
        assert_eq!(write_graph(&g), "bcg 1\n2 2\n0 1\n1 0\n1 1\n");
    }
}
