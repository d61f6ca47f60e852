use std::collections::HashMap;

use thiserror::Error;

use super::{ClosedTrail, EulerFamily};
use crate::hypercore::{EdgeId, Hypergraph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyFormatError {
    #[error("line {line}: unknown vertex {label:?}")]
    UnknownVertex { line: usize, label: String },
    #[error("line {line}: expected an edge id in parentheses, found {token:?}")]
    BadEdge { line: usize, token: String },
    #[error("line {line}: a trail alternates anchors and (edge) tokens and ends on an anchor")]
    BadShape { line: usize },
    #[error("malformed JSON family: {0}")]
    Json(String),
}

/// Reads a family in either the text form (`v0 (e1) v1 ... v0`, labels
/// resolved against `h`) or the JSON form.
pub fn parse_family(text: &str, h: &Hypergraph) -> Result<EulerFamily, FamilyFormatError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| FamilyFormatError::Json(e.to_string()));
    }
    let index: HashMap<String, VertexId> = (0..h.order()).map(|v| (h.label(v), v)).collect();
    let mut trails = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len().is_multiple_of(2) {
            return Err(FamilyFormatError::BadShape { line: line_no });
        }
        let mut anchors = Vec::new();
        let mut edges = Vec::new();
        for (j, tok) in tokens.iter().enumerate() {
            if j % 2 == 0 {
                let v = index.get(*tok).ok_or_else(|| FamilyFormatError::UnknownVertex {
                    line: line_no,
                    label: tok.to_string(),
                })?;
                anchors.push(*v);
            } else {
                let id = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| FamilyFormatError::BadEdge {
                        line: line_no,
                        token: tok.to_string(),
                    })?;
                edges.push(EdgeId(id));
            }
        }
        trails.push(ClosedTrail::new(anchors, edges));
    }
    Ok(EulerFamily::new(trails))
}
