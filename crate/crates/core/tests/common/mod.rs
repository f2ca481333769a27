//! Independent oracles shared by the integration tests. Nothing here calls
//! the algorithm under test; each helper recomputes its answer from first
//! principles.

#![allow(dead_code)]

use std::collections::VecDeque;

use freecover::{Letter, Permutation, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_letters<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5)))
        .collect()
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    Word::reduce(random_letters(rng, rank, max_len), rank).unwrap()
}

/// Random reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5));
        if letters.last().is_none_or(|p| p.inverse() != l) {
            letters.push(l);
        }
    }
    Word::reduce(letters, rank).unwrap()
}

/// Free reduction by repeatedly deleting the first cancelling pair.
pub fn naive_reduce(text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    loop {
        let pos = chars
            .windows(2)
            .position(|w| w[0] != w[1] && w[0].eq_ignore_ascii_case(&w[1]));
        match pos {
            Some(i) => {
                chars.drain(i..i + 2);
            }
            None => break,
        }
    }
    if chars.is_empty() {
        "1".into()
    } else {
        chars.into_iter().collect()
    }
}

/// Exponent sums by counting characters.
pub fn naive_abelianize(text: &str, rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for c in text.chars().filter(|c| c.is_ascii_alphabetic()) {
        let g = (c.to_ascii_lowercase() as u8 - b'a') as usize;
        v[g] += if c.is_ascii_lowercase() { 1 } else { -1 };
    }
    v
}

/// Walks the infinite grid one unit step at a time.
pub fn naive_grid_walk(text: &str, start: (i64, i64)) -> (i64, i64) {
    let (mut x, mut y) = start;
    for c in text.chars() {
        match c {
            'a' => x += 1,
            'A' => x -= 1,
            'b' => y += 1,
            'B' => y -= 1,
            _ => {}
        }
    }
    (x, y)
}

/// Image array of `k` random permutations of `m` points whose generated
/// group is transitive.
pub fn random_transitive_action<R: Rng>(rng: &mut R, k: usize, m: usize) -> Vec<Vec<usize>> {
    loop {
        let perms: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        if orbit_of_zero(&perms).len() == m {
            return perms;
        }
    }
}

fn orbit_of_zero(perms: &[Vec<usize>]) -> Vec<usize> {
    let m = perms[0].len();
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut out = vec![0];
    while let Some(u) = queue.pop_front() {
        for p in perms {
            for v in (0..m).filter(|&v| v == p[u] || p[v] == u) {
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                    queue.push_back(v);
                }
            }
        }
    }
    out
}

pub fn to_perms(images: &[Vec<usize>]) -> Vec<Permutation> {
    images
        .iter()
        .map(|p| Permutation::new(p.clone()).unwrap())
        .collect()
}

/// Right action of a word on a point: letters are applied left to right.
pub fn act(perms: &[Vec<usize>], point: usize, w: &Word) -> usize {
    let mut p = point;
    for l in w.letters() {
        let g = &perms[l.gen - 1];
        p = if l.inverted {
            g.iter().position(|&x| x == p).unwrap()
        } else {
            g[p]
        };
    }
    p
}

/// Schreier generators `t_i s (t_{i·s})⁻¹` of the stabilizer of point 0,
/// from a breadth-first transversal.
pub fn schreier_generators(perms: &[Vec<usize>]) -> Vec<Word> {
    let k = perms.len();
    let m = perms[0].len();
    let mut transversal: Vec<Option<Vec<Letter>>> = vec![None; m];
    transversal[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for g in 1..=k {
            for l in [Letter::gen(g), Letter::inv(g)] {
                let w = Word::reduce([l], k).unwrap();
                let v = act(perms, u, &w);
                if transversal[v].is_none() {
                    let mut t = transversal[u].clone().unwrap();
                    t.push(l);
                    transversal[v] = Some(t);
                    queue.push_back(v);
                }
            }
        }
    }
    let tw: Vec<Word> = transversal
        .into_iter()
        .map(|t| Word::reduce(t.unwrap(), k).unwrap())
        .collect();
    let mut out = Vec::new();
    for (i, t) in tw.iter().enumerate() {
        for g in 1..=k {
            let s = Word::generator(k, g).unwrap();
            let j = act(perms, i, &s);
            let w = t.multiply(&s).unwrap().multiply(&tw[j].inverse()).unwrap();
            if !w.is_identity() && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Naive Stallings folding on an edge list followed by pruning of hanging
/// trees; returns `(vertices, edges)` of the core around vertex 0.
pub fn naive_fold_core(mut edges: Vec<(usize, usize, usize)>, vertices: usize) -> (usize, usize) {
    let mut alive = vec![true; vertices];
    'outer: loop {
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = (edges[i], edges[j]);
                if a.2 != b.2 {
                    continue;
                }
                let pair = if a.0 == b.0 {
                    Some((a.1, b.1))
                } else if a.1 == b.1 {
                    Some((a.0, b.0))
                } else {
                    None
                };
                if let Some((u, v)) = pair {
                    let (keep, gone) = (u.min(v), u.max(v));
                    edges.remove(j);
                    if keep != gone {
                        alive[gone] = false;
                        for e in edges.iter_mut() {
                            if e.0 == gone {
                                e.0 = keep;
                            }
                            if e.1 == gone {
                                e.1 = keep;
                            }
                        }
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    loop {
        let mut degree = vec![0usize; vertices];
        for e in &edges {
            degree[e.0] += 1;
            degree[e.1] += 1;
        }
        let leaf = (1..vertices).find(|&v| alive[v] && degree[v] <= 1);
        match leaf {
            Some(v) => {
                alive[v] = false;
                edges.retain(|e| e.0 != v && e.1 != v);
            }
            None => break,
        }
    }
    (alive.iter().filter(|&&a| a).count(), edges.len())
}

/// Edge list of the wedge of the given word loops at vertex 0.
pub fn wedge_edges(words: &[Word]) -> (Vec<(usize, usize, usize)>, usize) {
    let mut edges = Vec::new();
    let mut next = 1;
    for w in words {
        let n = w.len();
        if n == 0 {
            continue;
        }
        let mut prev = 0;
        for (i, l) in w.letters().iter().enumerate() {
            let to = if i + 1 == n {
                0
            } else {
                next += 1;
                next - 1
            };
            if l.inverted {
                edges.push((to, prev, l.gen));
            } else {
                edges.push((prev, to, l.gen));
            }
            prev = to;
        }
    }
    (edges, next)
}

/// Transitivity by closing the orbit of point 0 under the image arrays.
pub fn act_is_transitive(perms: &[Permutation]) -> bool {
    let images: Vec<Vec<usize>> = perms.iter().map(|p| p.images().to_vec()).collect();
    orbit_of_zero(&images).len() == images[0].len()
}
