//! Exact rational arithmetic and univariate polynomial algebra.

pub mod arith;
mod factor;
mod field;
mod poly;
mod resultant;
mod roots;
pub mod zmod;

pub use factor::{
    factor_rationals, is_irreducible, poly_order, rational_cbrt, rational_roots, rational_sqrt,
    MAX_FACTOR_DEGREE,
};
pub use field::{
    factor_degrees_over, has_root_in_extension, interpolate, root_in_extension, roots_in_extension, squarefree_norm,
    tensor_factors, trager_norm, QuotientRing,
};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{format_rational, frac, parse_rational, product, rat, RationalPoly};
pub use resultant::{discriminant, resultant};
pub use roots::{numeric_roots, round_dyadic, sqrt_lower, sqrt_upper, ComplexBall, MAX_PRECISION, START_PRECISION};
