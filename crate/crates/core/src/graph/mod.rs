//! Generator-labeled directed multigraphs.
//!
//! An edge `(src, dst, label)` reads as the generator `label` when traversed
//! forward and as its inverse when traversed backward, so a labeled graph is
//! a combinatorial map to the bouquet of `rank` circles.

mod basis;
mod canonical;
mod coset;
mod fold;
mod io;
mod subgroup;

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::word::{Letter, Word};
use crate::{Error, Result};

pub use basis::{cycle_basis, cycle_basis_with_tree, rank, SpanningTree, TreeStep};
pub use canonical::canonical_form;
pub use coset::{coset_graph, nielsen_schreier_rank, ns_check, NsCertificate};
pub use fold::{fold, fold_with_edge_order, is_folded};
pub use io::GraphJson;
pub use subgroup::{prune_to_core, wedge_of_words, SubgroupGraph};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    /// 1-based generator index.
    pub label: usize,
}

/// Direction in which an edge is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reverse,
}

/// One step out of a vertex: the edge, its direction and the far endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub edge: EdgeId,
    pub direction: Direction,
    pub to: VertexId,
    pub letter: Letter,
}

/// Subgroup index: finite, or infinite as an explicit variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn finite(self) -> Option<usize> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => serializer.serialize_u64(*n as u64),
            Index::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    basepoint: VertexId,
}

impl LabeledGraph {
    pub fn new(
        rank: usize,
        vertex_count: usize,
        edges: Vec<Edge>,
        basepoint: VertexId,
    ) -> Result<Self> {
        if basepoint >= vertex_count {
            return Err(Error::InvalidGraph(format!(
                "basepoint {basepoint} outside {vertex_count} vertices"
            )));
        }
        for e in &edges {
            if e.src >= vertex_count || e.dst >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {} -> {} outside {vertex_count} vertices",
                    e.src, e.dst
                )));
            }
            if e.label == 0 || e.label > rank {
                return Err(Error::InvalidGraph(format!(
                    "label {} outside 1..={rank}",
                    e.label
                )));
            }
        }
        Ok(LabeledGraph {
            rank,
            vertex_count,
            edges,
            basepoint,
        })
    }

    /// One vertex with no edges: the trivial subgroup.
    pub fn trivial(rank: usize) -> Self {
        LabeledGraph {
            rank,
            vertex_count: 1,
            edges: Vec::new(),
            basepoint: 0,
        }
    }

    /// The bouquet of `k` circles: one vertex with loops labeled `1..=k`.
    pub fn bouquet(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument("bouquet needs k >= 1".into()));
        }
        let edges = (1..=k)
            .map(|label| Edge {
                src: 0,
                dst: 0,
                label,
            })
            .collect();
        LabeledGraph::new(k, 1, edges, 0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn with_basepoint(&self, basepoint: VertexId) -> Result<Self> {
        LabeledGraph::new(self.rank, self.vertex_count, self.edges.clone(), basepoint)
    }

    /// Undirected degree; a loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.src] += 1;
            deg[e.dst] += 1;
        }
        deg
    }

    /// Incident steps per vertex in traversal order: label ascending,
    /// forward before reverse, edge insertion order last.
    pub fn adjacency(&self) -> Vec<Vec<Step>> {
        let mut adj: Vec<Vec<Step>> = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.src].push(Step {
                edge: id,
                direction: Direction::Forward,
                to: e.dst,
                letter: Letter::gen(e.label),
            });
            adj[e.dst].push(Step {
                edge: id,
                direction: Direction::Reverse,
                to: e.src,
                letter: Letter::inv(e.label),
            });
        }
        for steps in &mut adj {
            steps.sort_by_key(|s| (s.letter.gen, s.direction, s.edge));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from(self.basepoint).iter().all(|&r| r)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn reachable_from(&self, start: VertexId) -> Vec<bool> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for s in &adj[u] {
                if !seen[s.to] {
                    seen[s.to] = true;
                    queue.push_back(s.to);
                }
            }
        }
        seen
    }

    /// Whether every vertex has exactly one outgoing and one incoming edge
    /// per label, i.e. the labeling is a covering map onto the bouquet.
    pub fn is_covering(&self) -> bool {
        self.covering_defect().is_none()
    }

    pub(crate) fn covering_defect(&self) -> Option<String> {
        if self.rank == 0 {
            return Some("rank 0 has no bouquet".into());
        }
        let mut out = vec![vec![0usize; self.rank]; self.vertex_count];
        let mut inc = vec![vec![0usize; self.rank]; self.vertex_count];
        for e in &self.edges {
            out[e.src][e.label - 1] += 1;
            inc[e.dst][e.label - 1] += 1;
        }
        for v in 0..self.vertex_count {
            for l in 0..self.rank {
                if out[v][l] != 1 || inc[v][l] != 1 {
                    return Some(format!(
                        "vertex {v} has {} outgoing and {} incoming edges labeled {}",
                        out[v][l],
                        inc[v][l],
                        l + 1
                    ));
                }
            }
        }
        None
    }

    /// Follows `w` letter by letter from `start`, taking the first matching
    /// step in traversal order. `None` when some letter cannot be read.
    pub fn trace(&self, w: &Word, start: VertexId) -> Option<VertexId> {
        self.trace_letters(w.letters(), start)
    }

    pub(crate) fn trace_letters(&self, letters: &[Letter], start: VertexId) -> Option<VertexId> {
        let table = self.transition_table();
        let mut v = start;
        for l in letters {
            v = table[v][letter_slot(*l)]?;
        }
        Some(v)
    }

    /// `table[v][slot]` is the vertex reached by reading a letter; see
    /// [`letter_slot`].
    pub(crate) fn transition_table(&self) -> Vec<Vec<Option<VertexId>>> {
        let mut table = vec![vec![None; 2 * self.rank]; self.vertex_count];
        for e in &self.edges {
            table[e.src][letter_slot(Letter::gen(e.label))].get_or_insert(e.dst);
            table[e.dst][letter_slot(Letter::inv(e.label))].get_or_insert(e.src);
        }
        table
    }

    pub fn to_dot(&self) -> String {
        io::to_dot(self)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }
}

pub(crate) fn letter_slot(l: Letter) -> usize {
    2 * (l.gen - 1) + usize::from(l.inverted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouquet_shape() {
        let b2 = LabeledGraph::bouquet(2).unwrap();
        assert_eq!(b2.vertex_count(), 1);
        assert_eq!(b2.edge_count(), 2);
        assert!(b2.is_covering());
        let b1 = LabeledGraph::bouquet(1).unwrap();
        assert_eq!(
            b1.edges(),
            &[Edge {
                src: 0,
                dst: 0,
                label: 1
            }]
        );
        assert!(LabeledGraph::bouquet(0).is_err());
        for k in 1..6 {
            assert_eq!(rank(&LabeledGraph::bouquet(k).unwrap()).unwrap(), k);
        }
    }

    #[test]
    fn validation() {
        let e = |src, dst, label| Edge { src, dst, label };
        assert!(LabeledGraph::new(2, 2, vec![e(0, 2, 1)], 0).is_err());
        assert!(LabeledGraph::new(2, 2, vec![e(0, 1, 3)], 0).is_err());
        assert!(LabeledGraph::new(2, 2, vec![e(0, 1, 0)], 0).is_err());
        assert!(LabeledGraph::new(2, 2, vec![], 2).is_err());
        let g = LabeledGraph::new(2, 2, vec![], 0).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn adjacency_order() {
        let e = |src, dst, label| Edge { src, dst, label };
        let g = LabeledGraph::new(2, 2, vec![e(1, 0, 2), e(0, 1, 1), e(0, 0, 1)], 0).unwrap();
        let adj = g.adjacency();
        let order: Vec<(usize, Direction)> = adj[0].iter().map(|s| (s.edge, s.direction)).collect();
        assert_eq!(
            order,
            vec![
                (1, Direction::Forward),
                (2, Direction::Forward),
                (2, Direction::Reverse),
                (0, Direction::Reverse),
            ]
        );
    }

    #[test]
    fn trace_reads_inverses_backward() {
        let e = |src, dst, label| Edge { src, dst, label };
        let g = LabeledGraph::new(2, 2, vec![e(0, 1, 1), e(1, 1, 2)], 0).unwrap();
        let w = Word::parse("abbA", 2).unwrap();
        assert_eq!(g.trace(&w, 0), Some(0));
        assert_eq!(g.trace(&Word::parse("b", 2).unwrap(), 0), None);
    }

    #[test]
    fn index_display_and_json() {
        assert_eq!(Index::Finite(3).to_string(), "3");
        assert_eq!(Index::Infinite.to_string(), "infinite");
        assert_eq!(
            serde_json::to_string(&Index::Infinite).unwrap(),
            "\"infinite\""
        );
        assert_eq!(serde_json::to_string(&Index::Finite(2)).unwrap(), "2");
    }
}
