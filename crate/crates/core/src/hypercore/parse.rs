//! JSON and plain-text hypergraph formats.
//!
//! JSON: `{"vertices": n, "edges": [[0,1,2], ...]}`, or with
//! `"vertices": ["a", "b", ...]` and edges written in labels.
//!
//! Text: one edge per line, whitespace-separated labels, `#` comment lines.
//! Without a `!vertices <n>` header the vertex set is the union of labels;
//! with it, edges use integer ids below `n`.
//!
//! Labels are assigned dense ids in sorted order: labels that are unsigned
//! integers come first in numeric order, then the rest lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde_json::Value;
use thiserror::Error;

use super::{Hypergraph, HypergraphError, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("edge {edge} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: usize, vertex: String },
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} lists vertex {vertex:?} more than once")]
    RepeatedVertex { edge: usize, vertex: String },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("malformed input{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Syntax { line: Option<usize>, message: String },
}

impl ParseError {
    fn syntax(line: Option<usize>, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// Parses either format; input whose first non-blank character is `{` is JSON.
pub fn parse(text: &str) -> Result<Hypergraph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub(crate) fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn sorted_labels(mut labels: Vec<String>) -> Result<Vec<String>, ParseError> {
    labels.sort_by(|a, b| label_order(a, b));
    if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(ParseError::DuplicateLabel(w[0].clone()));
    }
    Ok(labels)
}

fn build(
    order: usize,
    edges: Vec<Vec<VertexId>>,
    labels: Option<Vec<String>>,
) -> Result<Hypergraph, ParseError> {
    let name = |v: VertexId| match &labels {
        Some(l) => l.get(v).cloned().unwrap_or_else(|| v.to_string()),
        None => v.to_string(),
    };
    let h = Hypergraph::new(order, edges).map_err(|e| match e {
        HypergraphError::EmptyVertexSet => ParseError::EmptyVertexSet,
        HypergraphError::EmptyEdge { edge } => ParseError::EmptyEdge { edge },
        HypergraphError::UnknownVertex { edge, vertex } => ParseError::UnknownVertex {
            edge,
            vertex: name(vertex),
        },
        HypergraphError::RepeatedVertex { edge, vertex } => ParseError::RepeatedVertex {
            edge,
            vertex: name(vertex),
        },
        other => ParseError::syntax(None, other.to_string()),
    })?;
    match labels {
        Some(labels) => Ok(h.with_labels(labels).expect("one label per vertex")),
        None => Ok(h),
    }
}

pub fn parse_json(text: &str) -> Result<Hypergraph, ParseError> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| ParseError::syntax(Some(e.line()), e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| ParseError::syntax(None, "expected a JSON object"))?;
    let vertices = obj
        .get("vertices")
        .ok_or_else(|| ParseError::syntax(None, "missing \"vertices\""))?;
    let edges = obj
        .get("edges")
        .ok_or_else(|| ParseError::syntax(None, "missing \"edges\""))?
        .as_array()
        .ok_or_else(|| ParseError::syntax(None, "\"edges\" must be an array"))?;

    match vertices {
        Value::Number(num) => {
            let order = num
                .as_u64()
                .ok_or_else(|| ParseError::syntax(None, "\"vertices\" must be a non-negative integer"))?
                as usize;
            if order == 0 {
                return Err(ParseError::EmptyVertexSet);
            }
            let mut out = Vec::with_capacity(edges.len());
            for (idx, edge) in edges.iter().enumerate() {
                let items = edge
                    .as_array()
                    .ok_or_else(|| ParseError::syntax(None, format!("edge {idx} must be an array")))?;
                let mut ids = Vec::with_capacity(items.len());
                for item in items {
                    let v = item.as_u64().ok_or_else(|| {
                        ParseError::syntax(None, format!("edge {idx}: vertex {item} is not an integer id"))
                    })?;
                    ids.push(v as usize);
                }
                out.push(ids);
            }
            build(order, out, None)
        }
        Value::Array(items) => {
            let mut labels = Vec::with_capacity(items.len());
            for item in items {
                let label = item
                    .as_str()
                    .ok_or_else(|| ParseError::syntax(None, "vertex labels must be strings"))?;
                labels.push(label.to_string());
            }
            if labels.is_empty() {
                return Err(ParseError::EmptyVertexSet);
            }
            let labels = sorted_labels(labels)?;
            let index: BTreeMap<&str, VertexId> =
                labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            let mut out = Vec::with_capacity(edges.len());
            for (idx, edge) in edges.iter().enumerate() {
                let items = edge
                    .as_array()
                    .ok_or_else(|| ParseError::syntax(None, format!("edge {idx} must be an array")))?;
                let mut ids = Vec::with_capacity(items.len());
                for item in items {
                    let label = item.as_str().ok_or_else(|| {
                        ParseError::syntax(None, format!("edge {idx}: vertex {item} is not a label"))
                    })?;
                    let v = index.get(label).ok_or_else(|| ParseError::UnknownVertex {
                        edge: idx,
                        vertex: label.to_string(),
                    })?;
                    ids.push(*v);
                }
                out.push(ids);
            }
            build(labels.len(), out, Some(labels.clone()))
        }
        _ => Err(ParseError::syntax(
            None,
            "\"vertices\" must be an integer or an array of labels",
        )),
    }
}

pub fn parse_text(text: &str) -> Result<Hypergraph, ParseError> {
    let mut header: Option<usize> = None;
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("!vertices") {
            if header.is_some() || !rows.is_empty() {
                return Err(ParseError::syntax(
                    Some(lineno),
                    "the !vertices header must precede every edge and appear once",
                ));
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::syntax(Some(lineno), "expected `!vertices <n>`"))?;
            header = Some(n);
            continue;
        }
        if line.starts_with('!') {
            return Err(ParseError::syntax(Some(lineno), format!("unknown directive {line:?}")));
        }
        rows.push((lineno, line.split_whitespace().collect()));
    }

    match header {
        Some(order) => {
            if order == 0 {
                return Err(ParseError::EmptyVertexSet);
            }
            let mut edges = Vec::with_capacity(rows.len());
            for (idx, (lineno, tokens)) in rows.iter().enumerate() {
                let mut ids = Vec::with_capacity(tokens.len());
                for tok in tokens {
                    let v = tok.parse::<usize>().map_err(|_| {
                        ParseError::syntax(
                            Some(*lineno),
                            format!("{tok:?} is not an integer id (required with !vertices)"),
                        )
                    })?;
                    if v >= order {
                        return Err(ParseError::UnknownVertex {
                            edge: idx,
                            vertex: tok.to_string(),
                        });
                    }
                    ids.push(v);
                }
                edges.push(ids);
            }
            build(order, edges, None)
        }
        None => {
            let mut labels: Vec<String> = rows
                .iter()
                .flat_map(|(_, t)| t.iter().map(|s| s.to_string()))
                .collect();
            labels.sort_by(|a, b| label_order(a, b));
            labels.dedup();
            if labels.is_empty() {
                return Err(ParseError::EmptyVertexSet);
            }
            let index: BTreeMap<&str, VertexId> =
                labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            let edges = rows
                .iter()
                .map(|(_, tokens)| tokens.iter().map(|t| index[t]).collect())
                .collect();
            build(labels.len(), edges, Some(labels.clone()))
        }
    }
}

impl Hypergraph {
    /// Canonical JSON: edges in id order, each sorted ascending.
    pub fn to_json(&self) -> String {
        let edges: Vec<Value> = match self.labels() {
            None => self
                .edges()
                .iter()
                .map(|e| Value::from(e.vertices().to_vec()))
                .collect(),
            Some(labels) => self
                .edges()
                .iter()
                .map(|e| Value::from(e.vertices().iter().map(|&v| labels[v].clone()).collect::<Vec<_>>()))
                .collect(),
        };
        let vertices = match self.labels() {
            None => Value::from(self.order()),
            Some(labels) => Value::from(labels.to_vec()),
        };
        #[derive(serde::Serialize)]
        struct Canonical {
            vertices: Value,
            edges: Vec<Value>,
        }
        serde_json::to_string(&Canonical { vertices, edges }).expect("serializable")
    }

    /// Plain-text form. Unlabeled hypergraphs get a `!vertices` header;
    /// labeled ones list labels only, so labeled isolated vertices are not
    /// representable here (use JSON).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.labels().is_none() {
            out.push_str(&format!("!vertices {}\n", self.order()));
        }
        for e in self.edges() {
            let line: Vec<String> = e.vertices().iter().map(|&v| self.label(v)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
