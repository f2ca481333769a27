use std::collections::HashMap;
use std::hash::Hash;

use crate::graph::{Edge, LabeledGraph};
use crate::perm::Permutation;
use crate::{Error, Result};

const MAX_CAYLEY_ORDER: usize = 100_000;

/// A finite group given by its shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CayleyGroup {
    /// `ℤ_{m₁} ⊕ .. ⊕ ℤ_{m_r}`.
    Abelian(Vec<u64>),
    /// The subgroup of `S_n` generated by the given permutations.
    Permutations(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Abelian(Vec<i64>),
    Permutation(Permutation),
}

/// Cayley graph of a finite group with generator images `s_1..s_k`:
/// vertices are group elements (identity first), edges `(g, g·s_j, j)`.
/// It is a regular covering of the bouquet whose deck group is the group.
pub fn cayley_covering(group: &CayleyGroup, gens: &[GroupElement]) -> Result<LabeledGraph> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one generator image is required".into(),
        ));
    }
    match group {
        CayleyGroup::Abelian(moduli) => {
            if moduli.contains(&0) {
                return Err(Error::InvalidArgument("moduli must be positive".into()));
            }
            let mut images = Vec::with_capacity(gens.len());
            for g in gens {
                match g {
                    GroupElement::Abelian(v) if v.len() == moduli.len() => {
                        images.push(normalize(v, moduli))
                    }
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "generator {g:?} is not an element of Z^{}",
                            moduli.len()
                        )))
                    }
                }
            }
            let order: u64 = moduli.iter().product();
            let identity = vec![0i64; moduli.len()];
            let graph = cayley_from(identity, &images, |x, y| {
                let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                normalize(&sum, moduli)
            })?;
            if graph.vertex_count() as u64 != order {
                return Err(Error::NotGenerating {
                    expected: order as usize,
                    found: graph.vertex_count(),
                });
            }
            Ok(graph)
        }
        CayleyGroup::Permutations(degree) => {
            let mut images = Vec::with_capacity(gens.len());
            for g in gens {
                match g {
                    GroupElement::Permutation(p) if p.degree() == *degree => images.push(p.clone()),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "generator {g:?} is not a permutation of degree {degree}"
                        )))
                    }
                }
            }
            cayley_from(Permutation::identity(*degree), &images, |x, y| x.then(y))
        }
    }
}

/// `ℤ_m ⊕ ℤ_m` with generators `(1,0)`, `(0,1)`: the torus quotient of the
/// grid covering.
pub fn torus_covering(m: u64) -> Result<LabeledGraph> {
    cayley_covering(
        &CayleyGroup::Abelian(vec![m, m]),
        &[
            GroupElement::Abelian(vec![1, 0]),
            GroupElement::Abelian(vec![0, 1]),
        ],
    )
}

fn normalize(v: &[i64], moduli: &[u64]) -> Vec<i64> {
    v.iter()
        .zip(moduli)
        .map(|(&x, &m)| x.rem_euclid(m as i64))
        .collect()
}

fn cayley_from<E, F>(identity: E, gens: &[E], mul: F) -> Result<LabeledGraph>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    let mut index: HashMap<E, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (j, s) in gens.iter().enumerate() {
            let product = mul(&elements[i], s);
            let dst = match index.get(&product) {
                Some(&d) => d,
                None => {
                    let d = elements.len();
                    if d >= MAX_CAYLEY_ORDER {
                        return Err(Error::ResourceLimit(format!(
                            "group order exceeds {MAX_CAYLEY_ORDER}"
                        )));
                    }
                    index.insert(product.clone(), d);
                    elements.push(product);
                    d
                }
            };
            edges.push(Edge {
                src: i,
                dst,
                label: j + 1,
            });
        }
        i += 1;
    }
    LabeledGraph::new(gens.len(), elements.len(), edges, 0)
}
