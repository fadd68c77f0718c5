//! Desk-scale first Galois cohomology over the rationals.
//!
//! Coclasses in `H^1(Q, M)` for small finite modules `M` are realized as
//! explicit etale algebras. The crate provides exact polynomial algebra,
//! permutation-group machinery, finite group cohomology, etale algebra
//! invariants, Kummer-data codecs and local Hilbert/Tate symbols.

pub mod error;
pub mod exactpoly;
pub mod permstruct;
pub mod groupcoh;
pub mod etalealg;
pub mod kummerh1;
pub mod localsym;

pub use error::{Error, Result};
pub use exactpoly::{BigInt, BigRational, ComplexBall, RationalPoly};
