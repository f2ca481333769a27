use std::ops::{Add, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Direction, Edge, LabeledGraph, SpanningTree, SubgroupGraph, TreeStep};
use crate::word::{Letter, Word};
use crate::{Error, Result};

/// Largest `n` accepted by [`artin_certificate`].
pub const DEFAULT_ARTIN_BOUND: usize = 5;

/// A lattice point of the grid; the fiber over the wedge point is `ℤ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }
}

/// Deck transformation `(x, y) ↦ (x + dx, y + dy)` of the grid covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DeckTranslation {
    pub dx: i64,
    pub dy: i64,
}

impl Add<DeckTranslation> for GridPoint {
    type Output = GridPoint;

    fn add(self, t: DeckTranslation) -> GridPoint {
        GridPoint::new(self.x + t.dx, self.y + t.dy)
    }
}

impl Sub for GridPoint {
    type Output = DeckTranslation;

    fn sub(self, other: GridPoint) -> DeckTranslation {
        DeckTranslation {
            dx: self.x - other.x,
            dy: self.y - other.y,
        }
    }
}

fn require_rank_two(w: &Word) -> Result<()> {
    if w.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: w.rank(),
        });
    }
    Ok(())
}

/// Endpoint of the lift of the loop `w` starting at `start`: `a` steps in
/// `x`, `b` steps in `y`.
pub fn grid_lift(w: &Word, start: GridPoint) -> Result<GridPoint> {
    require_rank_two(w)?;
    let mut p = start;
    for letter in w.letters() {
        let step = letter.sign();
        match letter.gen {
            1 => p.x += step,
            _ => p.y += step,
        }
    }
    Ok(p)
}

/// Whether the lift of `w` is closed; independent of the starting point.
pub fn lift_closes(w: &Word) -> Result<bool> {
    Ok(grid_lift(w, GridPoint::ORIGIN)? == GridPoint::ORIGIN)
}

/// Vertex id of `(x, y)` in [`grid`]`(n)`.
pub fn grid_vertex(n: usize, x: usize, y: usize) -> usize {
    y * (n + 1) + x
}

fn horizontal_edge(n: usize, x: usize, y: usize) -> usize {
    y * n + x
}

fn vertical_edge(n: usize, x: usize, y: usize) -> usize {
    n * (n + 1) + x * n + y
}

/// The truncated grid `G_n = G ∩ [0, n]²`: `a`-edges point in `+x`,
/// `b`-edges in `+y`, basepoint `(0, 0)`. Horizontal edges come first
/// (row by row), then vertical edges (column by column).
pub fn grid(n: usize) -> LabeledGraph {
    let mut edges = Vec::with_capacity(2 * n * (n + 1));
    for y in 0..=n {
        for x in 0..n {
            edges.push(Edge {
                src: grid_vertex(n, x, y),
                dst: grid_vertex(n, x + 1, y),
                label: 1,
            });
        }
    }
    for x in 0..=n {
        for y in 0..n {
            edges.push(Edge {
                src: grid_vertex(n, x, y),
                dst: grid_vertex(n, x, y + 1),
                label: 2,
            });
        }
    }
    LabeledGraph::new(2, (n + 1) * (n + 1), edges, 0).expect("grid is well formed")
}

/// Comb spanning tree of `G_n`: the bottom row plus every vertical edge.
pub fn comb_tree(n: usize) -> SpanningTree {
    let g = grid(n);
    let mut parent = vec![None; (n + 1) * (n + 1)];
    for x in 0..=n {
        if x > 0 {
            parent[grid_vertex(n, x, 0)] = Some(TreeStep {
                parent: grid_vertex(n, x - 1, 0),
                edge: horizontal_edge(n, x - 1, 0),
                direction: Direction::Forward,
            });
        }
        for y in 1..=n {
            parent[grid_vertex(n, x, y)] = Some(TreeStep {
                parent: grid_vertex(n, x, y - 1),
                edge: vertical_edge(n, x, y - 1),
                direction: Direction::Forward,
            });
        }
    }
    SpanningTree::from_parents(&g, parent).expect("comb is a spanning tree")
}

/// Free basis of `π₁(G_n)` from the comb tree:
/// `w_{i,j} = aⁱ bʲ a b⁻ʲ a⁻⁽ⁱ⁺¹⁾` for `0 ≤ i < n`, `1 ≤ j ≤ n`,
/// `j` outer and `i` inner.
pub fn grid_basis(n: usize) -> Result<Vec<Word>> {
    if n < 1 {
        return Err(Error::InvalidArgument("grid basis needs n >= 1".into()));
    }
    let mut out = Vec::with_capacity(n * n);
    for j in 1..=n {
        for i in 0..n {
            let mut letters = Vec::with_capacity(2 * i + 2 * j + 2);
            letters.extend(std::iter::repeat_n(Letter::gen(1), i));
            letters.extend(std::iter::repeat_n(Letter::gen(2), j));
            letters.push(Letter::gen(1));
            letters.extend(std::iter::repeat_n(Letter::inv(2), j));
            letters.extend(std::iter::repeat_n(Letter::inv(1), i + 1));
            out.push(Word::reduce(letters, 2)?);
        }
    }
    Ok(out)
}

/// Finite evidence that `[F_2, F_2]` is not finitely generated: the `n²`
/// basis loops of `G_n` lie in the commutator subgroup and freely generate a
/// subgroup of rank exactly `n²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinCertificate {
    pub n: usize,
    pub basis_count: usize,
    pub all_in_commutator: bool,
    pub stallings_rank: usize,
    pub conclusion: String,
}

impl ArtinCertificate {
    pub fn holds(&self) -> bool {
        self.all_in_commutator
            && self.basis_count == self.n * self.n
            && self.stallings_rank == self.n * self.n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate is serializable")
    }
}

pub fn artin_certificate(n: usize) -> Result<ArtinCertificate> {
    artin_certificate_with_bound(n, DEFAULT_ARTIN_BOUND)
}

pub fn artin_certificate_with_bound(n: usize, bound: usize) -> Result<ArtinCertificate> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "artin certificate needs n >= 1".into(),
        ));
    }
    if n > bound {
        return Err(Error::ResourceLimit(format!(
            "n = {n} exceeds the configured bound {bound}"
        )));
    }
    let basis = grid_basis(n)?;
    let all_in_commutator = basis.iter().all(Word::in_commutator_subgroup);
    let sg = SubgroupGraph::from_words(2, &basis)?;
    let stallings_rank = sg.rank();
    let n2 = n * n;
    let conclusion = if all_in_commutator && stallings_rank == n2 && basis.len() == n2 {
        format!(
            "the {n2} basis loops of G_{n} lie in [F_2,F_2] and freely generate a subgroup of rank {n2}"
        )
    } else {
        format!(
            "certificate failed: {} words, rank {stallings_rank}",
            basis.len()
        )
    };
    Ok(ArtinCertificate {
        n,
        basis_count: basis.len(),
        all_in_commutator,
        stallings_rank,
        conclusion,
    })
}

/// Whether `H₁` of the covering map kills every basis cycle of `G_n`.
pub fn homology_image_check(n: usize) -> Result<bool> {
    Ok(grid_basis(n)?.iter().all(|w| w.abelianize().is_zero()))
}

/// Samples translations, start points and loops and checks that translation
/// preserves edge labels and directions, commutes with lifting, and acts
/// simply transitively on the fiber `ℤ²`.
pub fn deck_translations_check(range: i64, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| {
        GridPoint::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range))
    };
    for _ in 0..samples {
        let s = point(&mut rng);
        let u = point(&mut rng);
        let t = u - s;

        // label/direction preservation for the two edges leaving s
        for (dx, dy) in [(1, 0), (0, 1)] {
            let end = GridPoint::new(s.x + dx, s.y + dy);
            if (end + t) - (s + t) != end - s {
                return false;
            }
        }

        // simple transitivity: t is the only translation taking s to u
        if s + t != u || (u - s) != t {
            return false;
        }

        let len = rng.gen_range(0..=24);
        let letters = (0..len).map(|_| Letter::new(rng.gen_range(1..=2), rng.gen_bool(0.5)));
        let w = Word::reduce(letters, 2).expect("rank 2");
        let (Ok(lift_s), Ok(lift_u)) = (grid_lift(&w, s), grid_lift(&w, u)) else {
            return false;
        };
        if lift_s + t != lift_u {
            return false;
        }
        // closure is the same at every start
        if (lift_s == s) != (lift_u == u) {
            return false;
        }
    }
    true
}
