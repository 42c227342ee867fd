//! Hecke-type identities: the catalog of infinite identities, the double-sum
//! evaluator and the finite lemmas.

pub mod catalog;
pub mod hecke;
pub mod lemmas;

pub use catalog::{
    class_members, identity_ids, lookup, verify_equivalence_class, verify_identity, verify_identity_at, IdentityEntry,
    CATALOG, CLASS_LABELS, DEFAULT_Z,
};
pub use hecke::{bilateral_sum, hecke_sum, hecke_sum_with, Bound, ExtraFactor, HeckeOptions, HeckeSumSpec, Quadratic};
pub use lemmas::{check_point, grid_points, lemma_ids, lookup_lemma, verify_lemma_grid, LemmaDef, LemmaGrid, LEMMAS};
