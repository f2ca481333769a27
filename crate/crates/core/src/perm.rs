use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as its image array.
///
/// Composition follows path order: `p.then(q)` applies `p` first, then `q`,
/// so traversing loop `γ₁` and then `γ₂` has permutation
/// `perm(γ₁).then(perm(γ₂))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(Error::InvalidPermutation(format!("point {p} out of range")));
                }
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] == i)
            .collect()
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat_n(1, self.fixed_points().len()));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Orbits of the group generated by `gens` on `{0, .., n-1}`.
pub fn orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in gens {
                for q in [g.apply(p), g.inverse().apply(p)] {
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(n: usize, gens: &[Permutation]) -> bool {
    n == 0 || orbits(n, gens).len() == 1
}

/// All permutations commuting with every generator, found by backtracking
/// over partial assignments. Sorted ascending by image array.
pub fn centralizer(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    fn extend(
        n: usize,
        gens: &[Permutation],
        partial: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        next: usize,
        out: &mut Vec<Permutation>,
    ) {
        if next == n {
            let images = partial.iter().map(|x| x.expect("assigned")).collect();
            out.push(Permutation { images });
            return;
        }
        for target in 0..n {
            if used[target] {
                continue;
            }
            partial[next] = Some(target);
            used[target] = true;
            if consistent(gens, partial) {
                extend(n, gens, partial, used, next + 1, out);
            }
            partial[next] = None;
            used[target] = false;
        }
    }

    // σ(g(i)) == g(σ(i)) wherever both sides are assigned
    fn consistent(gens: &[Permutation], partial: &[Option<usize>]) -> bool {
        gens.iter().all(|g| {
            partial
                .iter()
                .enumerate()
                .all(|(i, s)| match (s, partial[g.apply(i)]) {
                    (Some(si), Some(sgi)) => sgi == g.apply(*si),
                    _ => true,
                })
        })
    }

    let mut out = Vec::new();
    let mut partial = vec![None; n];
    let mut used = vec![false; n];
    extend(n, gens, &mut partial, &mut used, 0, &mut out);
    out.sort();
    out
}
