//! Cohomology of finite groups with coefficients in finite modules.
//!
//! Groups are permutation groups; their elements are addressed by index in
//! the sorted element list. Cochains are dense tables over tuples of indices.

mod catalog;
mod cohom;
mod hol;
mod howell;
mod module;
mod rescor;

pub use catalog::{named_abelian, named_group, named_module};
pub use cohom::{
    coboundary, cohomology, is_cocycle, normalize, CoclassSet, MAX_CLASSES, MAX_DEGREE, MAX_GROUP_ORDER,
    MAX_MODULE_ORDER,
};
pub use hol::{crossed_to_hol, h1_via_hol, hol_to_crossed, translation_conjugate, HolH1, HolHom};
pub use howell::{kernel, kernel_sparse, Howell};
pub use module::{tuple_index, tuple_of, Cochain, FiniteGModule};
pub use rescor::{
    augmentation_module, chi_instance, cor_res_is_index, corestrict, coset_reps, cup11, induced_map,
    lemma53_check, permutation_module, random_lemma53_instance, res_cor, restrict, Direction, Lemma53Instance,
    Lemma53Outcome, ModuleMap, Pairing,
};
