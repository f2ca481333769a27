use serde::Serialize;

use super::{Edge, Index, LabeledGraph, SubgroupGraph, VertexId};
use crate::perm::{is_transitive, Permutation};
use crate::{Error, Result};

/// Schreier coset graph of a permutation action of `F_k`: one vertex per
/// point, an edge `(i, perms[j](i), j + 1)` for every point and generator.
pub fn coset_graph(perms: &[Permutation], basepoint: VertexId) -> Result<LabeledGraph> {
    let m = perms
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| Error::InvalidArgument("at least one permutation is required".into()))?;
    if let Some(p) = perms.iter().find(|p| p.degree() != m) {
        return Err(Error::InvalidPermutation(format!(
            "degree {} differs from {m}",
            p.degree()
        )));
    }
    if m == 0 || basepoint >= m {
        return Err(Error::InvalidArgument(format!(
            "basepoint {basepoint} outside {m} points"
        )));
    }
    if !is_transitive(m, perms) {
        return Err(Error::NotTransitive);
    }
    let mut edges = Vec::with_capacity(m * perms.len());
    for i in 0..m {
        for (j, p) in perms.iter().enumerate() {
            edges.push(Edge {
                src: i,
                dst: p.apply(i),
                label: j + 1,
            });
        }
    }
    LabeledGraph::new(perms.len(), m, edges, basepoint)
}

/// `(k - 1) · index + 1`.
pub fn nielsen_schreier_rank(k: usize, index: usize) -> usize {
    (k - 1) * index + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NsCertificate {
    pub k: usize,
    pub index: Index,
    /// Exact subgroup rank for finite index; for infinite index the rank of
    /// the core graph, which only bounds the subgroup from below.
    pub rank: usize,
    pub predicted_rank: Option<usize>,
    pub formula_holds: Option<bool>,
    pub conclusion: String,
}

/// Compares the rank of the subgroup carried by `g` with the
/// Nielsen–Schreier prediction from its index.
pub fn ns_check(k: usize, g: &LabeledGraph) -> Result<NsCertificate> {
    if g.rank() != k {
        return Err(Error::RankMismatch {
            expected: k,
            found: g.rank(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let sg = SubgroupGraph::from_graph(g)?;
    let rank = sg.rank();
    Ok(match sg.index() {
        Index::Finite(index) => {
            let predicted = nielsen_schreier_rank(k, index);
            let holds = predicted == rank;
            NsCertificate {
                k,
                index: Index::Finite(index),
                rank,
                predicted_rank: Some(predicted),
                formula_holds: Some(holds),
                conclusion: if holds {
                    format!("rank {rank} = ({k}-1)*{index}+1")
                } else {
                    format!("rank {rank} != ({k}-1)*{index}+1 = {predicted}")
                },
            }
        }
        Index::Infinite => NsCertificate {
            k,
            index: Index::Infinite,
            rank,
            predicted_rank: None,
            formula_holds: None,
            conclusion: format!(
                "infinite index: the formula bounds no finite rank; core rank {rank} is a lower bound only"
            ),
        },
    })
}
