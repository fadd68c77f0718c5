//! Finite permutation groups of small degree: holomorphs, regular
//! representations, centralizers, G-structures, resolvents and block systems.

mod abelian;
mod perm;
mod structures;

pub use abelian::{holomorph, Elem, FiniteAbelian, HolomorphGroup};
pub(crate) use abelian::{affine, decompose};
pub use perm::{all_perms, factorial, GroupSpec, Perm, PermGroup, MAX_SYM_DEGREE};
pub use structures::{
    all_partitions, cayley_images, centralizer_in_sym, conjugates_in_sym, count_g_structures,
    normalizer_in_sym, resolvent_image, s4_pairing_action, s4_to_s3, sign_hom, stable_partitions,
    torsor_structures, wreath_product_of, GStructureCount, GStructureWitness, GroupHom, Partition,
    StablePartition, TorsorStructures,
};
