use super::{canonical_form, fold, Edge, Index, LabeledGraph};
use crate::word::Word;
use crate::{Error, Result};

/// A finitely generated subgroup `H ≤ F_k` as its folded core graph.
///
/// The graph is in canonical form, so two subgroup graphs are equal exactly
/// when they represent the same subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    graph: LabeledGraph,
    origin: Vec<Word>,
}

impl SubgroupGraph {
    /// Stallings graph of `⟨words⟩`: wedge the word loops at a basepoint,
    /// fold, prune hanging trees. An empty list gives the trivial subgroup.
    pub fn from_words(rank: usize, words: &[Word]) -> Result<Self> {
        let wedge = wedge_of_words(rank, words)?;
        let core = prune_to_core(&fold(&wedge)?);
        Ok(SubgroupGraph {
            graph: canonical_form(&core)?,
            origin: words.to_vec(),
        })
    }

    /// Wraps an existing folded graph, e.g. a coset graph.
    pub fn from_graph(graph: &LabeledGraph) -> Result<Self> {
        let core = prune_to_core(&fold(graph)?);
        Ok(SubgroupGraph {
            graph: canonical_form(&core)?,
            origin: Vec::new(),
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn origin(&self) -> &[Word] {
        &self.origin
    }

    /// Whether `w` reads as a closed loop at the basepoint.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.rank() != self.graph.rank() {
            return Err(Error::RankMismatch {
                expected: self.graph.rank(),
                found: w.rank(),
            });
        }
        let bp = self.graph.basepoint();
        Ok(self.graph.trace(w, bp) == Some(bp))
    }

    /// Vertex count when the core graph covers the bouquet, else infinite.
    pub fn index(&self) -> Index {
        if self.graph.is_covering() {
            Index::Finite(self.graph.vertex_count())
        } else {
            Index::Infinite
        }
    }

    /// Free rank `E - V + 1` of the subgroup.
    pub fn rank(&self) -> usize {
        self.graph.edge_count() + 1 - self.graph.vertex_count()
    }
}

/// Bouquet of the word loops glued at vertex 0, before folding.
pub fn wedge_of_words(rank: usize, words: &[Word]) -> Result<LabeledGraph> {
    let mut vertex_count = 1;
    let mut edges = Vec::new();
    for w in words {
        if w.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: w.rank(),
            });
        }
        let n = w.len();
        if n == 0 {
            continue;
        }
        // path 0 = p_0, p_1, .., p_{n-1}, p_n = 0
        let first_new = vertex_count;
        vertex_count += n - 1;
        let point = |i: usize| {
            if i == 0 || i == n {
                0
            } else {
                first_new + i - 1
            }
        };
        for (i, letter) in w.letters().iter().enumerate() {
            let (a, b) = (point(i), point(i + 1));
            let (src, dst) = if letter.inverted { (b, a) } else { (a, b) };
            edges.push(Edge {
                src,
                dst,
                label: letter.gen,
            });
        }
    }
    LabeledGraph::new(rank, vertex_count, edges, 0)
}

/// Repeatedly deletes non-basepoint vertices of degree at most one.
pub fn prune_to_core(g: &LabeledGraph) -> LabeledGraph {
    let n = g.vertex_count();
    let mut alive_v = vec![true; n];
    let mut alive_e = vec![true; g.edge_count()];
    let mut deg = g.degrees();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, e) in g.edges().iter().enumerate() {
        incident[e.src].push(id);
        if e.dst != e.src {
            incident[e.dst].push(id);
        }
    }
    let mut stack: Vec<usize> = (0..n)
        .filter(|&v| v != g.basepoint() && deg[v] <= 1)
        .collect();
    while let Some(v) = stack.pop() {
        if !alive_v[v] {
            continue;
        }
        alive_v[v] = false;
        for &id in &incident[v] {
            if !alive_e[id] {
                continue;
            }
            alive_e[id] = false;
            let e = g.edges()[id];
            let other = if e.src == v { e.dst } else { e.src };
            deg[other] -= 1;
            deg[v] -= 1;
            if other != g.basepoint() && alive_v[other] && deg[other] <= 1 {
                stack.push(other);
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if alive_v[v] {
            new_id[v] = count;
            count += 1;
        }
    }
    let edges = g
        .edges()
        .iter()
        .zip(&alive_e)
        .filter(|(_, &a)| a)
        .map(|(e, _)| Edge {
            src: new_id[e.src],
            dst: new_id[e.dst],
            label: e.label,
        })
        .collect();
    LabeledGraph::new(g.rank(), count, edges, new_id[g.basepoint()]).expect("pruned graph is valid")
}
