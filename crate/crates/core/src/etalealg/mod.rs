//! Etale algebras over Q: factor structure, resolvents, Galois groups,
//! torsor closures and mirror quartics.

mod algebra;
mod closure;
mod galois;
mod mirror;

pub use algebra::{fields_isomorphic, EtaleAlgebra, SquareClass, MAX_ETALE_DEGREE};
pub use closure::{galois_automorphisms, is_g_torsor, torsor_closure};
pub use mirror::{mirror_algebra, mirror_quartic};
pub use galois::{
    cubic_resolvent, cubic_resolvent_poly, depress_quartic, frobenius_consistent, frobenius_cycle_types,
    galois_group, quadratic_resolvent, reference_quartics, transitive_group, GaloisTag,
};
