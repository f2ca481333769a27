use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::graph::{LabeledGraph, VertexId};
use crate::perm::Permutation;
use crate::word::{Letter, Word};
use crate::{Error, Result};

/// Cap on monodromy group elements explored by [`is_regular`].
pub const MAX_MONODROMY_ELEMENTS: usize = 500_000;

fn require_covering(g: &LabeledGraph) -> Result<()> {
    match g.covering_defect() {
        Some(reason) => Err(Error::NotCovering(reason)),
        None => g.require_connected(),
    }
}

/// For a covering, the permutation of the vertex set induced by each
/// generator: `perms[j](v)` is the end of the `j+1`-labeled edge out of `v`.
pub fn covering_permutations(g: &LabeledGraph) -> Result<Vec<Permutation>> {
    if let Some(reason) = g.covering_defect() {
        return Err(Error::NotCovering(reason));
    }
    let mut images = vec![vec![0; g.vertex_count()]; g.rank()];
    for e in g.edges() {
        images[e.label - 1][e.src] = e.dst;
    }
    images.into_iter().map(Permutation::new).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lift {
    pub end: VertexId,
    pub closed: bool,
}

/// The unique lift of the loop `w` starting at `start`.
pub fn lift_in_finite_covering(g: &LabeledGraph, w: &Word, start: VertexId) -> Result<Lift> {
    require_covering(g)?;
    if w.rank() != g.rank() {
        return Err(Error::RankMismatch {
            expected: g.rank(),
            found: w.rank(),
        });
    }
    if start >= g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vertex {start} out of range"
        )));
    }
    let end = g.trace(w, start).expect("coverings lift every word");
    Ok(Lift {
        end,
        closed: end == start,
    })
}

/// Label-preserving automorphisms of a connected covering (its deck
/// transformations), as vertex permutations sorted by image array.
///
/// A deck transformation is fixed by where it sends the basepoint, so each
/// candidate image is propagated along edges and kept if consistent.
pub fn deck_group(g: &LabeledGraph) -> Result<Vec<Permutation>> {
    require_covering(g)?;
    let perms = covering_permutations(g)?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    for target in 0..n {
        let mut map = vec![usize::MAX; n];
        map[g.basepoint()] = target;
        let mut queue = VecDeque::from([g.basepoint()]);
        let mut ok = true;
        'bfs: while let Some(u) = queue.pop_front() {
            for p in &perms {
                for (from, to) in [
                    (p.apply(u), p.apply(map[u])),
                    (p.inverse().apply(u), p.inverse().apply(map[u])),
                ] {
                    if map[from] == usize::MAX {
                        map[from] = to;
                        queue.push_back(from);
                    } else if map[from] != to {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
        }
        if ok {
            if let Ok(sigma) = Permutation::new(map) {
                if perms.iter().all(|p| p.commutes_with(&sigma)) {
                    out.push(sigma);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A loop whose lifts are closed at one fiber point and open at another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrregularityWitness {
    pub word: Word,
    pub closed_at: VertexId,
    pub open_at: VertexId,
    pub open_end: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub sheets: usize,
    pub condition_iii_holds: bool,
    pub deck_transitive: bool,
    pub deck_order: usize,
    pub word_budget: usize,
    /// Number of distinct fiber permutations induced by words within budget.
    pub monodromy_elements_seen: usize,
    /// True when every element of the monodromy group was reached.
    pub monodromy_exhausted: bool,
    pub witness: Option<IrregularityWitness>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.deck_transitive
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is serializable")
    }
}

/// Regularity of a finite connected covering, decided two ways:
/// transitivity of the deck group on the fiber, and whether every loop
/// within `word_budget` letters (default twice the sheet count) lifts to all
/// closed or all open paths.
pub fn is_regular(g: &LabeledGraph, word_budget: Option<usize>) -> Result<RegularityReport> {
    require_covering(g)?;
    let n = g.vertex_count();
    let budget = word_budget.unwrap_or(2 * n);
    let deck = deck_group(g)?;

    let perms = covering_permutations(g)?;
    let mut letters: Vec<(Letter, Permutation)> = Vec::with_capacity(2 * perms.len());
    for (j, p) in perms.iter().enumerate() {
        letters.push((Letter::gen(j + 1), p.clone()));
        letters.push((Letter::inv(j + 1), p.inverse()));
    }

    // breadth-first over the monodromy group: shortest word per element
    let mut seen: HashMap<Permutation, Vec<Letter>> = HashMap::new();
    let identity = Permutation::identity(n);
    seen.insert(identity.clone(), Vec::new());
    let mut frontier = vec![identity];
    let mut witness = None;
    let mut depth = 0;
    while !frontier.is_empty() && depth < budget && witness.is_none() {
        depth += 1;
        let mut next = Vec::new();
        for elem in &frontier {
            let word = seen[elem].clone();
            for (letter, p) in &letters {
                let candidate = elem.then(p);
                if seen.contains_key(&candidate) {
                    continue;
                }
                let mut w = word.clone();
                w.push(*letter);
                let fixed = candidate.fixed_points();
                if witness.is_none() && !fixed.is_empty() && fixed.len() < n {
                    let open_at = (0..n).find(|&v| candidate.apply(v) != v).expect("mixed");
                    witness = Some(IrregularityWitness {
                        word: Word::reduce(w.clone(), g.rank())?,
                        closed_at: fixed[0],
                        open_at,
                        open_end: candidate.apply(open_at),
                    });
                }
                seen.insert(candidate.clone(), w);
                next.push(candidate);
                if seen.len() > MAX_MONODROMY_ELEMENTS {
                    return Err(Error::ResourceLimit(format!(
                        "monodromy group exceeds {MAX_MONODROMY_ELEMENTS} elements"
                    )));
                }
            }
        }
        frontier = next;
    }

    Ok(RegularityReport {
        sheets: n,
        condition_iii_holds: witness.is_none(),
        deck_transitive: deck.len() == n,
        deck_order: deck.len(),
        word_budget: budget,
        monodromy_elements_seen: seen.len(),
        monodromy_exhausted: frontier.is_empty(),
        witness,
    })
}
