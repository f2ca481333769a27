//! Coverings of the bouquet of circles.
//!
//! The infinite grid covering of the bouquet of two circles is handled
//! arithmetically (path lifting is integer addition); its truncations `G_n`
//! and finite coverings are materialized as [`LabeledGraph`]s.
//!
//! [`LabeledGraph`]: crate::graph::LabeledGraph

mod cayley;
mod grid;
mod regular;

pub use cayley::{cayley_covering, torus_covering, CayleyGroup, GroupElement};
pub use grid::{
    artin_certificate, artin_certificate_with_bound, comb_tree, deck_translations_check, grid,
    grid_basis, grid_lift, grid_vertex, homology_image_check, lift_closes, ArtinCertificate,
    DeckTranslation, GridPoint, DEFAULT_ARTIN_BOUND,
};
pub use regular::{
    covering_permutations, deck_group, is_regular, lift_in_finite_covering, IrregularityWitness,
    Lift, RegularityReport, MAX_MONODROMY_ELEMENTS,
};
