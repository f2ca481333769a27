//! Executable covering-space group theory.
//!
//! * [`word`]: reduced words in free groups of finite rank, abelianization and
//!   homomorphisms.
//! * [`graph`]: generator-labeled graphs, Stallings folding, subgroup
//!   membership/index/rank and Schreier coset graphs.
//! * [`covering`]: coverings of the bouquet of circles, including the grid
//!   covering whose loops are exactly the commutator subgroup of `F_2`.
//! * [`analytic`]: monodromy of polynomial coverings of the punctured plane
//!   computed by numerical root continuation.

pub mod analytic;
pub mod covering;
mod error;
pub mod graph;
pub mod perm;
pub mod word;

pub use error::{Error, Result};
pub use graph::{Index, LabeledGraph, SubgroupGraph};
pub use perm::Permutation;
pub use word::{AbelianVector, Homomorphism, Letter, Word};
