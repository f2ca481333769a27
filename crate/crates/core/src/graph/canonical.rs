use std::collections::VecDeque;

use super::{fold::is_folded, Edge, LabeledGraph};
use crate::{Error, Result};

/// Renumbers vertices in breadth-first discovery order from the basepoint
/// (labels ascending, outgoing before incoming) and sorts edges. Two folded
/// connected graphs have equal canonical forms iff they are isomorphic as
/// based labeled graphs.
pub fn canonical_form(g: &LabeledGraph) -> Result<LabeledGraph> {
    if !is_folded(g) {
        return Err(Error::NotFolded);
    }
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut new_id = vec![usize::MAX; n];
    new_id[g.basepoint()] = 0;
    let mut next = 1;
    let mut queue = VecDeque::from([g.basepoint()]);
    while let Some(u) = queue.pop_front() {
        for s in &adj[u] {
            if new_id[s.to] == usize::MAX {
                new_id[s.to] = next;
                next += 1;
                queue.push_back(s.to);
            }
        }
    }
    if next != n {
        return Err(Error::Disconnected);
    }
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge {
            src: new_id[e.src],
            dst: new_id[e.dst],
            label: e.label,
        })
        .collect();
    edges.sort_by_key(|e| (e.src, e.label, e.dst));
    LabeledGraph::new(g.rank(), n, edges, 0)
}
