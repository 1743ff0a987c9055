//! Text formats for graphs.
//!
//! One edge per line: `u v` for plain graphs and `u v b` / `u v w` for
//! bi-colored ones, with 1-based labels. Blank lines and `#` comments are
//! skipped. A `nodes N` line declares the node count, which otherwise is the
//! largest label used. The writers emit a canonical form (node count first,
//! then edges sorted by endpoints) that parses back to the same graph and
//! re-serializes byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use crate::catalog::gadget::{parse_dimacs, Cnf};
use crate::catalog::graph::{BiColoredGraph, EdgeColor, Graph};
use crate::error::{Error, Result};

struct Parsed {
    nodes: Option<usize>,
    edges: Vec<(usize, u32, u32, Option<EdgeColor>)>,
}

fn parse_lines(text: &str, colored: bool) -> Result<Parsed> {
    let mut parsed = Parsed {
        nodes: None,
        edges: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "nodes" {
            if fields.len() != 2 {
                return Err(Error::parse(line_no, "expected `nodes N`"));
            }
            if parsed.nodes.is_some() {
                return Err(Error::parse(line_no, "node count given twice"));
            }
            let n = fields[1]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad node count `{}`", fields[1])))?;
            parsed.nodes = Some(n);
            continue;
        }
        let expected = if colored { 3 } else { 2 };
        if fields.len() != expected {
            let shape = if colored {
                "`u v b` or `u v w`"
            } else {
                "`u v`"
            };
            return Err(Error::parse(
                line_no,
                format!("expected {shape}, got `{line}`"),
            ));
        }
        let label = |s: &str| -> Result<u32> {
            match s.parse::<u32>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(Error::parse(line_no, format!("bad node label `{s}`"))),
            }
        };
        let (u, v) = (label(fields[0])?, label(fields[1])?);
        let color = if colored {
            Some(match fields[2] {
                "b" => EdgeColor::Black,
                "w" => EdgeColor::White,
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("edge color must be `b` or `w`, got `{other}`"),
                    ))
                }
            })
        } else {
            None
        };
        parsed.edges.push((line_no, u, v, color));
    }
    Ok(parsed)
}

fn node_count(parsed: &Parsed) -> Result<usize> {
    let max = parsed
        .edges
        .iter()
        .map(|e| e.1.max(e.2) as usize)
        .max()
        .unwrap_or(0);
    match parsed.nodes {
        Some(n) if n < max => Err(Error::Format(format!(
            "label {max} exceeds the declared {n} nodes"
        ))),
        Some(n) => Ok(n),
        None => Ok(max),
    }
}

fn at_line(line: usize, err: Error) -> Error {
    match err {
        Error::Format(msg) => Error::Format(format!("line {line}: {msg}")),
        other => other,
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let parsed = parse_lines(text, false)?;
    let mut g = Graph::new(node_count(&parsed)?);
    for &(line, u, v, _) in &parsed.edges {
        g.add_edge(u, v).map_err(|e| at_line(line, e))?;
    }
    Ok(g)
}

pub fn parse_bicolored(text: &str) -> Result<BiColoredGraph> {
    let parsed = parse_lines(text, true)?;
    let mut g = BiColoredGraph::new(node_count(&parsed)?);
    for &(line, u, v, color) in &parsed.edges {
        g.add_edge(u, v, color.expect("colored lines carry a color"))
            .map_err(|e| at_line(line, e))?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("nodes {}\n", g.node_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_bicolored(g: &BiColoredGraph) -> String {
    let mut edges: Vec<(u32, u32, char)> = g
        .black_edges()
        .into_iter()
        .map(|(u, v)| (u, v, 'b'))
        .collect();
    edges.extend(g.white_edges().into_iter().map(|(u, v)| (u, v, 'w')));
    edges.sort_unstable();
    let mut out = format!("nodes {}\n", g.node_count());
    for (u, v, c) in edges {
        writeln!(out, "{u} {v} {c}").unwrap();
    }
    out
}

fn read(path: &Path) -> Result<String, std::io::Error> {
    std::fs::read_to_string(path)
}

/// Errors from the file readers: I/O failures are kept apart from content
/// errors so callers can map them to different exit codes.
#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Content { path: String, source: Error },
}

fn read_with<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T, ReadError> {
    let shown = path.display().to_string();
    let text = read(path).map_err(|source| ReadError::Io {
        path: shown.clone(),
        source,
    })?;
    parse(&text).map_err(|source| ReadError::Content {
        path: shown,
        source,
    })
}

pub fn read_graph(path: &Path) -> Result<Graph, ReadError> {
    read_with(path, parse_graph)
}

pub fn read_bicolored(path: &Path) -> Result<BiColoredGraph, ReadError> {
    read_with(path, parse_bicolored)
}

pub fn read_dimacs(path: &Path) -> Result<Cnf, ReadError> {
    read_with(path, parse_dimacs)
}
