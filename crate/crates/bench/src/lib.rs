//! Fixtures shared by the criterion benches.

use freecover::Permutation;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` transitive actions of `F_k` on `m` points, reproducible from `seed`.
pub fn transitive_actions(seed: u64, count: usize, k: usize, m: usize) -> Vec<Vec<Permutation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let perms: Vec<Permutation> = (0..k)
            .map(|_| {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(&mut rng);
                Permutation::new(p).expect("shuffle is a permutation")
            })
            .collect();
        if freecover::perm::is_transitive(m, &perms) {
            out.push(perms);
        }
    }
    out
}
