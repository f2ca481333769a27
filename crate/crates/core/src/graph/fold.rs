use std::collections::HashMap;

use super::{Edge, LabeledGraph};
use crate::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller representative wins so the result does not depend on
            // argument order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Stallings folding: identifies edges sharing a source and label (or a
/// destination and label) until none remain. Edges are scanned in insertion
/// order.
pub fn fold(g: &LabeledGraph) -> Result<LabeledGraph> {
    let order: Vec<usize> = (0..g.edge_count()).collect();
    fold_with_edge_order(g, &order)
}

/// Folds scanning edges in the given order. The folded result is the same
/// up to vertex renumbering for every order.
pub fn fold_with_edge_order(g: &LabeledGraph, order: &[usize]) -> Result<LabeledGraph> {
    let mut check = order.to_vec();
    check.sort_unstable();
    if check != (0..g.edge_count()).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(
            "fold order must be a permutation of the edge ids".into(),
        ));
    }
    g.require_connected()?;

    let edges = g.edges();
    let mut uf = UnionFind::new(g.vertex_count());
    let mut alive = vec![true; edges.len()];
    loop {
        let mut changed = false;
        let mut outgoing: HashMap<(usize, usize), usize> = HashMap::new();
        let mut incoming: HashMap<(usize, usize), usize> = HashMap::new();
        for &id in order {
            if !alive[id] {
                continue;
            }
            let e = edges[id];
            let (s, d) = (uf.find(e.src), uf.find(e.dst));
            if let Some(&other) = outgoing.get(&(s, e.label)) {
                let other_dst = edges[other].dst;
                uf.union(other_dst, d);
                alive[id] = false;
                changed = true;
                continue;
            }
            if let Some(&other) = incoming.get(&(d, e.label)) {
                let other_src = edges[other].src;
                uf.union(other_src, s);
                alive[id] = false;
                changed = true;
                continue;
            }
            outgoing.insert((s, e.label), id);
            incoming.insert((d, e.label), id);
        }
        if !changed {
            break;
        }
    }

    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut count = 0;
    for v in 0..g.vertex_count() {
        let r = uf.find(v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
    }
    let folded_edges = edges
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(e, _)| Edge {
            src: new_id[uf.find(e.src)],
            dst: new_id[uf.find(e.dst)],
            label: e.label,
        })
        .collect();
    let basepoint = new_id[uf.find(g.basepoint())];
    LabeledGraph::new(g.rank(), count, folded_edges, basepoint)
}

pub fn is_folded(g: &LabeledGraph) -> bool {
    let mut outgoing = std::collections::HashSet::new();
    let mut incoming = std::collections::HashSet::new();
    g.edges()
        .iter()
        .all(|e| outgoing.insert((e.src, e.label)) && incoming.insert((e.dst, e.label)))
}
