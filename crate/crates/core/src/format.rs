//! Plain-text hypergraph format.
//!
//! ```text
//! # comment
//! <vertex_count> <edge_count>
//! v v v        one edge per line, strictly ascending indices
//! ```
//!
//! Lines starting with `#` are skipped. LF line endings, ASCII decimal.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.vertex_count(), h.edge_count());
    for e in h.edges() {
        let mut sorted = e.clone();
        sorted.sort_unstable();
        let line: Vec<String> = sorted.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the text format. `source` names the input in diagnostics.
pub fn parse(text: &str, source: &str) -> Result<Hypergraph> {
    let err = |line: usize, message: String| Error::Parse {
        path: source.to_string(),
        line,
        message,
    };
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'));

    let (header_line, header) = loop {
        match lines.next() {
            Some((_, "")) => continue,
            Some(x) => break x,
            None => return Err(err(1, "missing header `<vertex_count> <edge_count>`".into())),
        }
    };
    let fields: Vec<&str> = header.split(' ').collect();
    let [vc, ec] = fields.as_slice() else {
        return Err(err(header_line, format!("header must be two integers, got {header:?}")));
    };
    let parse_num = |tok: &str, line: usize| {
        tok.parse::<usize>()
            .map_err(|_| err(line, format!("not a nonnegative integer: {tok:?}")))
    };
    let vertex_count = parse_num(vc, header_line)?;
    let edge_count = parse_num(ec, header_line)?;

    let mut edges = Vec::with_capacity(edge_count);
    let mut last_line = header_line;
    for (line, content) in lines {
        if edges.len() == edge_count {
            if content.is_empty() {
                continue;
            }
            return Err(err(line, format!("more than the declared {edge_count} edges")));
        }
        last_line = line;
        if content.is_empty() {
            return Err(err(line, "empty edge".into()));
        }
        let mut edge = Vec::new();
        for tok in content.split(' ') {
            let v = parse_num(tok, line)?;
            if v >= vertex_count {
                return Err(err(line, format!("vertex {v} out of range (vertex_count {vertex_count})")));
            }
            if edge.last().is_some_and(|&prev| prev >= v) {
                return Err(err(line, "edge vertices must be strictly ascending".into()));
            }
            edge.push(v);
        }
        edges.push(edge);
    }
    if edges.len() < edge_count {
        return Err(err(
            last_line,
            format!("expected {edge_count} edges, found {}", edges.len()),
        ));
    }
    Ok(Hypergraph::new(vertex_count, edges))
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text, &path.display().to_string())
}

pub fn write_file(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_text(h)).map_err(|e| Error::io(path, e))
}
