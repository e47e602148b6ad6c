//! Graph serialization: graph6 (read/write), JSON edge lists (read/write)
//! and Graphviz DOT (write only).

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::LabeledGraph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";
const GRAPH6_MAX_N: usize = (1 << 36) - 1;

fn push_size(out: &mut String, n: usize) {
    let six = |shift: u32| char::from(((n >> shift) & 63) as u8 + 63);
    if n <= 62 {
        out.push(char::from(n as u8 + 63));
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(six(shift));
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(six(shift));
        }
    }
}

/// graph6 encoding (no header, no trailing newline).
///
/// The upper triangle is emitted column by column, `x(1,2), x(1,3), x(2,3),
/// x(1,4), …`, packed six bits per printable byte with zero padding.
pub fn to_graph6(g: &LabeledGraph) -> String {
    let n = g.n();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 2..=n {
        for i in 1..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(char::from(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(char::from((acc << (6 - filled)) + 63));
    }
    out
}

/// Parses a single graph6 line; an optional `>>graph6<<` header and
/// surrounding whitespace are accepted.
pub fn from_graph6(text: &str) -> Result<LabeledGraph> {
    let text = text.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("graph6: byte {b} outside 63..=126")));
    }
    let val = |b: u8| (b - 63) as usize;
    let take = |bytes: &[u8], from: usize, count: usize| -> Result<usize> {
        bytes
            .get(from..from + count)
            .ok_or_else(|| Error::Parse("graph6: truncated size field".into()))
            .map(|s| s.iter().fold(0usize, |acc, &b| acc << 6 | val(b)))
    };
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("graph6: empty input".into())),
        [126, 126, ..] => (take(bytes, 2, 6)?, 8),
        [126, ..] => (take(bytes, 1, 3)?, 4),
        [b, ..] => (val(*b), 1),
    };
    if n > GRAPH6_MAX_N {
        return Err(Error::Parse(format!("graph6: n = {n} too large")));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    let data = &bytes[body..];
    if data.len() != expected {
        return Err(Error::Parse(format!(
            "graph6: expected {expected} data bytes for n = {n}, got {}",
            data.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 2..=n {
        for i in 1..j {
            let byte = val(data[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    LabeledGraph::from_edges(n, &edges)
}

/// JSON edge list `{"n": …, "edges": [[i, j], …]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&LabeledGraph> for EdgeListJson {
    fn from(g: &LabeledGraph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<EdgeListJson> for LabeledGraph {
    type Error = Error;
    fn try_from(j: EdgeListJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        LabeledGraph::from_edges(j.n, &edges)
    }
}

pub fn to_json(g: &LabeledGraph) -> String {
    serde_json::to_string(&EdgeListJson::from(g)).expect("edge list serializes")
}

pub fn from_json(text: &str) -> Result<LabeledGraph> {
    let parsed: EdgeListJson = serde_json::from_str(text)?;
    parsed.try_into()
}

/// Graphviz DOT with every vertex listed, so isolated vertices survive.
pub fn to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 1..=g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (i, j) in g.edges() {
        let _ = writeln!(out, "  {i} -- {j};");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFormat {
    Graph6,
    Json,
    Dot,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Self::Graph6),
            "json" => Ok(Self::Json),
            "dot" => Ok(Self::Dot),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn write_graph(g: &LabeledGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g) + "\n",
        GraphFormat::Json => to_json(g) + "\n",
        GraphFormat::Dot => to_dot(g),
    }
}

/// Parses graph text, treating anything starting with `{` as JSON and
/// everything else as graph6.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_graph6(text)
    }
}

pub fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}
