//! Text, JSON and DOT formats.
//!
//! Text: first line `n m`, then `m` lines `u v`; `#` starts a comment.
//! JSON: `{"n": 4, "edges": [[0, 1], ...]}` with an optional
//! `"multigraph": true`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    multigraph: bool,
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub fn parse_text(src: &str) -> Result<Graph> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let pair = |no: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace().map(|t| t.parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(parse_err(no, format!("expected two integers, got `{l}`"))),
        }
    };
    let (no, header) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let (n, m) = pair(no, header)?;
    let mut edges = Vec::with_capacity(m);
    for (no, l) in lines {
        edges.push(pair(no, l)?);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header says {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

pub fn parse_json(src: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    let edges = raw.edges.into_iter().map(|[u, v]| (u, v));
    if raw.multigraph {
        Graph::new_multigraph(raw.n, edges)
    } else {
        Graph::new(raw.n, edges)
    }
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_graph(src: &str) -> Result<Graph> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        multigraph: g.is_multigraph(),
    })
    .expect("graph serializes")
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
