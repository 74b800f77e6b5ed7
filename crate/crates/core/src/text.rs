//! Text interchange format for hypergraphs and clique families.
//!
//! A hypergraph block is a header line `r=<int> n=<int>` followed by one edge
//! per line (r vertex indices, space-separated, strictly increasing). Lines
//! starting with `#` are comments; a blank line terminates a block.
//! Serialization emits edges in lexicographic order and never writes comments,
//! so output is byte-identical for equal hypergraphs.
//!
//! A clique family block uses the header `family r=<int> k=<int>` and one
//! member set per line; set sizes may exceed r.

use std::fmt::Write as _;

use thiserror::Error;

use crate::arrow::{ArrowError, CliqueFamily};
use crate::hypergraph::{Hypergraph, HypergraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header `r=<int> n=<int>`, found `{found}`")]
    MalformedHeader { line: usize, found: String },
    #[error("line {line}: expected family header `family r=<int> k=<int>`, found `{found}`")]
    MalformedFamilyHeader { line: usize, found: String },
    #[error("line {line}: edge has {got} vertices, expected r={expected}")]
    WrongArity { line: usize, expected: u32, got: usize },
    #[error("line {line}: `{token}` is not a vertex index")]
    BadVertex { line: usize, token: String },
    #[error("line {line}: vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { line: usize, vertex: u32, n: u32 },
    #[error("line {line}: vertices must be strictly increasing")]
    NotIncreasing { line: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: HypergraphError,
    },
    #[error("line {line}: {source}")]
    InvalidFamily { line: usize, source: ArrowError },
    #[error("no hypergraph block found in input")]
    Empty,
    #[error("line {line}: unexpected content after block")]
    TrailingContent { line: usize },
    #[error("line {line}: family member sets must cover a contiguous range 0..n-1 (vertex {missing} missing)")]
    FamilyNotContiguous { line: usize, missing: u32 },
}

/// Cursor over input lines that tracks 1-based line numbers.
pub(crate) struct Lines<'a> {
    iter: std::iter::Peekable<std::str::Lines<'a>>,
    pub(crate) line: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().peekable(),
            line: 0,
        }
    }

    pub(crate) fn next_line(&mut self) -> Option<&'a str> {
        let l = self.iter.next()?;
        self.line += 1;
        Some(l)
    }

    /// Next line that is neither blank nor a comment; `None` at end of input.
    /// Blank lines before any content are skipped, not treated as terminators.
    fn next_content_skipping_blanks(&mut self) -> Option<(usize, &'a str)> {
        loop {
            let l = self.next_line()?;
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((self.line, t));
        }
    }

    /// Next content line within a block: comments are skipped, a blank line or
    /// end of input terminates the block (returns `None`).
    fn next_in_block(&mut self) -> Option<(usize, &'a str)> {
        loop {
            let l = self.next_line()?;
            let t = l.trim();
            if t.starts_with('#') {
                continue;
            }
            if t.is_empty() {
                return None;
            }
            return Some((self.line, t));
        }
    }

    fn rest_is_blank(&mut self) -> Result<(), ParseError> {
        while let Some(l) = self.next_line() {
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Err(ParseError::TrailingContent { line: self.line });
            }
        }
        Ok(())
    }
}

fn parse_kv(token: &str, key: &str) -> Option<u32> {
    token.strip_prefix(key)?.strip_prefix('=')?.parse().ok()
}

fn parse_vertex_row(line_no: usize, text: &str, n: u32) -> Result<Vec<u32>, ParseError> {
    let mut vs = Vec::new();
    for token in text.split_whitespace() {
        let v: u32 = token.parse().map_err(|_| ParseError::BadVertex {
            line: line_no,
            token: token.to_string(),
        })?;
        if v >= n {
            return Err(ParseError::VertexOutOfRange {
                line: line_no,
                vertex: v,
                n,
            });
        }
        if let Some(&last) = vs.last() {
            if v <= last {
                return Err(ParseError::NotIncreasing { line: line_no });
            }
        }
        vs.push(v);
    }
    Ok(vs)
}

/// Parses one hypergraph block starting at the cursor. Returns `None` if the
/// remaining input holds no content at all.
pub(crate) fn parse_block(lines: &mut Lines<'_>) -> Result<Option<Hypergraph>, ParseError> {
    let Some((header_line, header)) = lines.next_content_skipping_blanks() else {
        return Ok(None);
    };
    let mut tokens = header.split_whitespace();
    let (r, n) = match (
        tokens.next().and_then(|t| parse_kv(t, "r")),
        tokens.next().and_then(|t| parse_kv(t, "n")),
        tokens.next(),
    ) {
        (Some(r), Some(n), None) => (r, n),
        _ => {
            return Err(ParseError::MalformedHeader {
                line: header_line,
                found: header.to_string(),
            })
        }
    };
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    while let Some((line_no, text)) = lines.next_in_block() {
        let vs = parse_vertex_row(line_no, text, n)?;
        if vs.len() != r as usize {
            return Err(ParseError::WrongArity {
                line: line_no,
                expected: r,
                got: vs.len(),
            });
        }
        if edges.contains(&vs) {
            return Err(ParseError::DuplicateEdge { line: line_no });
        }
        edges.push(vs);
        edge_lines.push(line_no);
    }
    let h = Hypergraph::from_edge_lists(r, n, &edges).map_err(|source| ParseError::Invalid {
        line: header_line,
        source,
    })?;
    Ok(Some(h))
}

/// Parses exactly one hypergraph; trailing non-blank content is an error.
pub fn parse(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = Lines::new(text);
    let h = parse_block(&mut lines)?.ok_or(ParseError::Empty)?;
    lines.rest_is_blank()?;
    Ok(h)
}

/// Parses a stream of blank-line-separated hypergraph blocks.
pub fn parse_blocks(text: &str) -> Result<Vec<Hypergraph>, ParseError> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some(h) = parse_block(&mut lines)? {
        out.push(h);
    }
    Ok(out)
}

/// Serializes a hypergraph block; edges in lexicographic order, no comments.
pub fn serialize(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "r={} n={}", h.r(), h.n());
    for e in h.edges() {
        let row: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Parses a clique family block: header `family r=<int> k=<int>`, one member
/// set per line. The union of the sets must be a contiguous range `0..n-1`.
pub fn parse_family(text: &str) -> Result<CliqueFamily, ParseError> {
    let mut lines = Lines::new(text);
    let Some((header_line, header)) = lines.next_content_skipping_blanks() else {
        return Err(ParseError::Empty);
    };
    let mut tokens = header.split_whitespace();
    let bad_header = || ParseError::MalformedFamilyHeader {
        line: header_line,
        found: header.to_string(),
    };
    if tokens.next() != Some("family") {
        return Err(bad_header());
    }
    let (r, k) = match (
        tokens.next().and_then(|t| parse_kv(t, "r")),
        tokens.next().and_then(|t| parse_kv(t, "k")),
        tokens.next(),
    ) {
        (Some(r), Some(k), None) => (r, k),
        _ => return Err(bad_header()),
    };
    let mut rows: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut max_vertex = 0u32;
    while let Some((line_no, text)) = lines.next_in_block() {
        let vs = parse_vertex_row(line_no, text, crate::hypergraph::MAX_VERTICES)?;
        if let Some(&m) = vs.last() {
            max_vertex = max_vertex.max(m);
        }
        rows.push((line_no, vs));
    }
    lines.rest_is_blank()?;
    let n = if rows.iter().all(|(_, vs)| vs.is_empty()) {
        0
    } else {
        max_vertex + 1
    };
    let mut covered = vec![false; n as usize];
    let mut sets = Vec::with_capacity(rows.len());
    for (line_no, vs) in &rows {
        for &v in vs {
            covered[v as usize] = true;
        }
        let set = VertexSet::from_vertices(n, vs).map_err(|source| ParseError::Invalid {
            line: *line_no,
            source,
        })?;
        sets.push(set);
    }
    if let Some(missing) = covered.iter().position(|c| !c) {
        return Err(ParseError::FamilyNotContiguous {
            line: header_line,
            missing: missing as u32,
        });
    }
    CliqueFamily::new(r, k, sets).map_err(|source| ParseError::InvalidFamily {
        line: header_line,
        source,
    })
}

/// Serializes a clique family block.
pub fn serialize_family(fam: &CliqueFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family r={} k={}", fam.r(), fam.k());
    for set in fam.sets() {
        let row: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
