use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Edge, LabeledGraph};
use crate::word::Letter;
use crate::{Error, Result};

/// Interchange form: `{"rank","vertices","basepoint","edges":[[src,dst,label]]}`
/// with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub vertices: usize,
    pub basepoint: usize,
    pub edges: Vec<[usize; 3]>,
}

impl From<&LabeledGraph> for GraphJson {
    fn from(g: &LabeledGraph) -> Self {
        GraphJson {
            rank: g.rank(),
            vertices: g.vertex_count(),
            basepoint: g.basepoint(),
            edges: g.edges().iter().map(|e| [e.src, e.dst, e.label]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for LabeledGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let edges = j
            .edges
            .iter()
            .map(|&[src, dst, label]| Edge { src, dst, label })
            .collect();
        LabeledGraph::new(j.rank, j.vertices, edges, j.basepoint)
    }
}

impl LabeledGraph {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let parsed: GraphJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGraph(format!("malformed graph JSON: {e}")))?;
        LabeledGraph::try_from(parsed)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph JSON is serializable")
    }
}

pub(super) fn to_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        if v == g.basepoint() {
            writeln!(out, "  v{v} [shape=doublecircle];").unwrap();
        } else {
            writeln!(out, "  v{v} [shape=circle];").unwrap();
        }
    }
    for e in g.edges() {
        let label = if e.label <= crate::word::MAX_TEXT_RANK {
            Letter::gen(e.label).to_char().to_string()
        } else {
            format!("x{}", e.label)
        };
        writeln!(out, "  v{} -> v{} [label=\"{label}\"];", e.src, e.dst).unwrap();
    }
    out.push_str("}\n");
    out
}
