//! Edge-list and JSON graph documents.

use serde::Deserialize;

use super::Graph;
use crate::error::{Error, ParseError, Result};

/// A parsed graph together with optional node weights (JSON form only).
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub weights: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
}

impl GraphDocument {
    /// Parses either the `n m` edge-list format or the JSON object form.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            parse_json(text)
        } else {
            parse_edge_list(text).map(|graph| Self {
                graph,
                weights: None,
            })
        }
    }
}

/// Reads a graph from an edge-list (or JSON) document.
pub fn load_graph(text: &str) -> Result<Graph> {
    GraphDocument::parse(text).map(|doc| doc.graph)
}

fn parse_json(text: &str) -> Result<GraphDocument> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    if raw.n == 0 {
        return Err(ParseError::Json("graph must have at least one node".into()).into());
    }
    let graph = Graph::from_edges(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))?;
    if let Some(w) = &raw.weights {
        if w.len() != raw.n {
            return Err(Error::DimensionMismatch {
                expected: raw.n,
                found: w.len(),
            });
        }
        if let Some((node, &weight)) = w.iter().enumerate().find(|(_, &x)| x <= 0.0 || x.is_nan()) {
            return Err(Error::NonPositiveWeight { node, weight });
        }
    }
    Ok(GraphDocument {
        graph,
        weights: raw.weights,
    })
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = fields.next().ok_or_else(|| ParseError::Malformed {
            line,
            reason: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| ParseError::Malformed {
            line,
            reason: format!("{what} {tok:?} is not a nonnegative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = fields.next() {
        return Err(ParseError::Malformed {
            line,
            reason: format!("unexpected trailing field {extra:?}"),
        });
    }
    Ok((a, b))
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError::Malformed {
        line: 1,
        reason: "empty document".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;
    if n == 0 {
        return Err(ParseError::Malformed {
            line: header_line,
            reason: "graph must have at least one node".into(),
        }
        .into());
    }
    if n > super::MAX_NODES {
        return Err(ParseError::TooManyNodes {
            n,
            max: super::MAX_NODES,
        }
        .into());
    }

    let mut pairs = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    for (line, body) in lines {
        let (u, v) = parse_pair(line, body)?;
        for node in [u, v] {
            if node >= n {
                return Err(ParseError::OutOfRange { line, node, n }.into());
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, node: u }.into());
        }
        pairs.push((u, v));
        line_of.push(line);
    }
    if pairs.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: pairs.len(),
        }
        .into());
    }
    // Re-tag duplicate diagnostics with the document line number.
    Graph::from_edges(n, pairs).map_err(|e| match e {
        Error::Parse(ParseError::DuplicateEdge { line, u, v }) => {
            Error::Parse(ParseError::DuplicateEdge {
                line: line_of[line - 1],
                u,
                v,
            })
        }
        other => other,
    })
}
