use std::collections::VecDeque;

use super::{Direction, EdgeId, LabeledGraph, VertexId};
use crate::word::{Letter, Word};
use crate::{Error, Result};

/// How a vertex is reached from its parent in a spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStep {
    pub parent: VertexId,
    pub edge: EdgeId,
    pub direction: Direction,
}

/// Spanning tree rooted at the basepoint; the basepoint has no parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    parent: Vec<Option<TreeStep>>,
}

impl SpanningTree {
    /// Breadth-first tree from the basepoint in traversal order.
    pub fn bfs(g: &LabeledGraph) -> Result<Self> {
        let adj = g.adjacency();
        let n = g.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[g.basepoint()] = true;
        let mut queue = VecDeque::from([g.basepoint()]);
        while let Some(u) = queue.pop_front() {
            for s in &adj[u] {
                if !seen[s.to] {
                    seen[s.to] = true;
                    parent[s.to] = Some(TreeStep {
                        parent: u,
                        edge: s.edge,
                        direction: s.direction,
                    });
                    queue.push_back(s.to);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Disconnected);
        }
        Ok(SpanningTree { parent })
    }

    /// Validates an explicit parent assignment against `g`.
    pub fn from_parents(g: &LabeledGraph, parent: Vec<Option<TreeStep>>) -> Result<Self> {
        let n = g.vertex_count();
        if parent.len() != n {
            return Err(Error::InvalidArgument("parent table size".into()));
        }
        for (v, step) in parent.iter().enumerate() {
            match (v == g.basepoint(), step) {
                (true, None) => {}
                (true, Some(_)) => {
                    return Err(Error::InvalidArgument("basepoint has a parent".into()))
                }
                (false, None) => {
                    return Err(Error::InvalidArgument(format!("vertex {v} has no parent")))
                }
                (false, Some(s)) => {
                    let e = g.edges().get(s.edge).ok_or_else(|| {
                        Error::InvalidArgument(format!("edge {} does not exist", s.edge))
                    })?;
                    let ok = match s.direction {
                        Direction::Forward => e.src == s.parent && e.dst == v,
                        Direction::Reverse => e.dst == s.parent && e.src == v,
                    };
                    if !ok {
                        return Err(Error::InvalidArgument(format!(
                            "edge {} does not join {} to {v}",
                            s.edge, s.parent
                        )));
                    }
                }
            }
        }
        // every vertex must reach the root without revisiting
        for start in 0..n {
            let mut v = start;
            let mut hops = 0;
            while let Some(s) = parent[v] {
                v = s.parent;
                hops += 1;
                if hops > n {
                    return Err(Error::InvalidArgument("parent table has a cycle".into()));
                }
            }
        }
        Ok(SpanningTree { parent })
    }

    pub fn parent(&self, v: VertexId) -> Option<TreeStep> {
        self.parent[v]
    }

    pub fn tree_edges(&self) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = self.parent.iter().flatten().map(|s| s.edge).collect();
        edges.sort_unstable();
        edges
    }

    /// Letters along the tree path from the basepoint to `v`.
    pub fn path_letters(&self, g: &LabeledGraph, v: VertexId) -> Vec<Letter> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(s) = self.parent[cur] {
            let label = g.edges()[s.edge].label;
            out.push(match s.direction {
                Direction::Forward => Letter::gen(label),
                Direction::Reverse => Letter::inv(label),
            });
            cur = s.parent;
        }
        out.reverse();
        out
    }
}

/// Free basis of `π₁(g, basepoint)` from the breadth-first spanning tree.
pub fn cycle_basis(g: &LabeledGraph) -> Result<Vec<Word>> {
    let tree = SpanningTree::bfs(g)?;
    cycle_basis_with_tree(g, &tree)
}

/// One word per non-tree edge `(u, v, label)`, in edge order:
/// `path(u) · label · path(v)⁻¹`, reduced.
pub fn cycle_basis_with_tree(g: &LabeledGraph, tree: &SpanningTree) -> Result<Vec<Word>> {
    let mut in_tree = vec![false; g.edge_count()];
    for id in tree.tree_edges() {
        in_tree[id] = true;
    }
    g.edges()
        .iter()
        .enumerate()
        .filter(|(id, _)| !in_tree[*id])
        .map(|(_, e)| {
            let mut letters = tree.path_letters(g, e.src);
            letters.push(Letter::gen(e.label));
            letters.extend(
                tree.path_letters(g, e.dst)
                    .into_iter()
                    .rev()
                    .map(Letter::inverse),
            );
            Word::reduce(letters, g.rank())
        })
        .collect()
}

/// `E - V + 1` for a connected graph.
pub fn rank(g: &LabeledGraph) -> Result<usize> {
    g.require_connected()?;
    Ok(g.edge_count() + 1 - g.vertex_count())
}
