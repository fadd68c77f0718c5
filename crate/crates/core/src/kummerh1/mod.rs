//! Kummer-data codecs for `H^1(Q, M)` with M of order 2, 3 or 4.

mod c3;
mod c4;
mod quad;
mod v4;

pub use c3::{c3_add, c3_decode, c3_encode, c3_neg, c3_sum_check, cube_roots, C3Decoded, CoclassC3, SumCheck};
pub use c4::{
    alpha_ring, c4_add, c4_decode, c4_encode, c4_neg, even_form, normalize, random_datum as random_c4_datum,
    separable_representative, C4Decoded, CoclassC4,
};
pub use quad::QuadElem;
pub use v4::{random_norm_one as random_v4_delta, v4_add, v4_decode, v4_encode, CoclassV4};

pub use c3::random_norm_one;

use crate::error::{invalid, Result};
use crate::etalealg::{EtaleAlgebra, SquareClass};
use crate::exactpoly::{rat, BigRational, RationalPoly};

/// `Q[x]/(x^n - a)` for n in {2, 3, 4}.
pub fn kummer_radical(n: usize, a: &BigRational) -> Result<EtaleAlgebra> {
    if !(2..=4).contains(&n) {
        return invalid(format!("radical degree must be 2, 3 or 4, got {n}"));
    }
    if num_traits::Zero::is_zero(a) {
        return invalid("a must be nonzero");
    }
    EtaleAlgebra::from_poly(&(&RationalPoly::monomial(rat(1), n) - &RationalPoly::constant(a.clone())))
}

/// `D -> -3D`: the quadratic algebra of the Tate dual of an order-3 module.
pub fn tate_dual_twist(d: &SquareClass) -> SquareClass {
    d.mul(&SquareClass::from_int(-3).unwrap())
}

/// `k -> 1 - k mod (p - 1)`: the dual of `mu_p^{(x) k}` twisted by a power of the cyclotomic character.
pub fn mu_power_dual(k: i64, p: u64) -> Result<i64> {
    if p < 2 {
        return invalid("p must be prime");
    }
    let m = p as i64 - 1;
    Ok((1 - k).rem_euclid(m))
}
