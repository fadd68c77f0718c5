use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::classes::{split_unit, LocalClass, Place};
use super::SymbolValue;
use crate::error::{invalid, Error, Result};
use crate::exactpoly::arith::{squarefree_class, support};
use crate::exactpoly::zmod::pow_mod;
use crate::exactpoly::BigRational;

fn legendre(u: u64, p: u64) -> i32 {
    if pow_mod(u % p, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The quadratic Hilbert symbol `(a, b)_v` by the closed formulas.
pub fn hilbert2(a: &BigRational, b: &BigRational, place: Place) -> Result<SymbolValue> {
    if a.is_zero() || b.is_zero() {
        return invalid("Hilbert symbol arguments must be nonzero");
    }
    let neg = match place {
        Place::Real => a.is_negative() && b.is_negative(),
        Place::Finite(2) => {
            let (al, u) = split_unit(a, 2, 8);
            let (be, w) = split_unit(b, 2, 8);
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w) + (al.rem_euclid(2) as u64) * omega(w) + (be.rem_euclid(2) as u64) * omega(u);
            e % 2 == 1
        }
        Place::Finite(p) => {
            let (al, u) = split_unit(a, p, p);
            let (be, w) = split_unit(b, p, p);
            let (al, be) = (al.rem_euclid(2), be.rem_euclid(2));
            let mut s = 1;
            if al * be == 1 && p % 4 == 3 {
                s = -s;
            }
            if be == 1 {
                s *= legendre(u, p);
            }
            if al == 1 {
                s *= legendre(w, p);
            }
            s == -1
        }
    };
    Ok(SymbolValue::sign(neg))
}

pub fn hilbert2_classes(a: &LocalClass, b: &LocalClass) -> Result<SymbolValue> {
    if a.place != b.place || a.m != 2 || b.m != 2 {
        return invalid("expected two square classes at the same place");
    }
    hilbert2(&a.rep_rational(), &b.rep_rational(), a.place)
}

/// The places where `(a, b)` can be nontrivial: 2, the primes of a and b, and infinity.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Vec<Place> {
    let mut ps: Vec<u64> = support(a).into_iter().chain(support(b)).chain([2]).collect();
    ps.sort_unstable();
    ps.dedup();
    let mut out: Vec<Place> = ps.into_iter().map(Place::Finite).collect();
    out.push(Place::Real);
    out
}

/// Product of `(a, b)_v` over all places; equals +1 for every a, b.
pub fn product_formula(a: &BigRational, b: &BigRational) -> Result<SymbolValue> {
    let mut acc = SymbolValue::one(2);
    for v in relevant_places(a, b) {
        acc = acc.mul(&hilbert2(a, b, v)?);
    }
    Ok(acc)
}

const CONIC_MAX_LEVEL: u32 = 16;
const CONIC_MAX_CANDIDATES: usize = 1 << 20;

fn vmod(x: u128, p: u128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut x = x;
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

/// Whether `a x^2 + b y^2 = z^2` has a nonzero solution over `Q_v`.
///
/// Independent of the symbol formulas: for finite v the conic is searched modulo
/// `p^j` for growing j, lifting solutions level by level, until either no primitive
/// solution survives or one solution satisfies Hensel's condition `2 t < j`, where t
/// is the valuation of its gradient.
pub fn conic_has_point(a: &BigRational, b: &BigRational, place: Place) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return invalid("conic coefficients must be nonzero");
    }
    let p = match place {
        Place::Real => return Ok(a.is_positive() || b.is_positive()),
        Place::Finite(p) => p as u128,
    };
    let a = squarefree_class(a);
    let b = squarefree_class(b);
    let to_u = |n: &BigInt, m: u128| -> u128 {
        let mm = BigInt::from(m);
        ((n % &mm + &mm) % &mm).to_u128().unwrap()
    };
    // charts: which coordinate of (x, y, z) is fixed to 1
    let eval = |chart: usize, s: u128, t: u128, m: u128, a: u128, b: u128| -> (u128, [u128; 3]) {
        let (x, y, z) = match chart {
            0 => (1, s, t),
            1 => (s, 1, t),
            _ => (s, t, 1),
        };
        let f = (a * (x * x % m) % m + b * (y * y % m) % m + m - z * z % m) % m;
        (f, [2 * a * x % m, 2 * b * y % m, (m - 2 * z % m) % m])
    };
    let mut level: Vec<(usize, u128, u128)> = Vec::new();
    for chart in 0..3 {
        for s in 0..p {
            for t in 0..p {
                level.push((chart, s, t));
            }
        }
    }
    let mut m = p;
    for j in 1..=CONIC_MAX_LEVEL {
        let (am, bm) = (to_u(&a, m), to_u(&b, m));
        level.retain(|&(c, s, t)| eval(c, s, t, m, am, bm).0 == 0);
        if level.is_empty() {
            return Ok(false);
        }
        for &(c, s, t) in &level {
            let (_, grad) = eval(c, s, t, m, am, bm);
            let tval = grad.iter().map(|&g| vmod(g, p, j)).min().unwrap();
            if 2 * tval < j {
                return Ok(true);
            }
        }
        let next_m = m * p;
        let mut next = Vec::with_capacity(level.len() * (p * p) as usize);
        for &(c, s, t) in &level {
            for i in 0..p {
                for k in 0..p {
                    next.push((c, s + i * m, t + k * m));
                }
            }
        }
        if next.len() > CONIC_MAX_CANDIDATES {
            return Err(Error::Precision("conic search exceeded its candidate budget".into()));
        }
        level = next;
        m = next_m;
    }
    Err(Error::Precision("conic search did not reach a Hensel certificate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{frac, rat};
    use proptest::prelude::*;

    const PLACES: [Place; 6] =
        [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7), Place::Finite(13), Place::Real];

    #[test]
    fn examples() {
        assert_eq!(hilbert2(&rat(2), &rat(5), Place::Finite(5)).unwrap().to_string(), "-1");
        assert_eq!(hilbert2(&rat(-1), &rat(-1), Place::Finite(2)).unwrap().to_string(), "-1");
        assert_eq!(hilbert2(&rat(-1), &rat(-1), Place::Real).unwrap().to_string(), "-1");
        assert!(hilbert2(&rat(-1), &rat(-1), Place::Finite(3)).unwrap().is_one());
        assert_eq!(hilbert2(&rat(3), &rat(3), Place::Finite(3)).unwrap().to_string(), "-1");
        assert!(hilbert2(&rat(2), &rat(-1), Place::Finite(2)).unwrap().is_one());
    }

    #[test]
    fn matches_conic_oracle() {
        let vals: Vec<BigRational> = [-1i64, 2, -2, 3, 5, -5, 7, 13, 6, -6, 10, -26]
            .iter()
            .map(|&n| rat(n))
            .chain([frac(1, 3), frac(-5, 4), frac(7, 2)])
            .collect();
        for v in PLACES {
            for a in &vals {
                for b in &vals {
                    let h = hilbert2(a, b, v).unwrap().is_one();
                    assert_eq!(h, conic_has_point(a, b, v).unwrap(), "({a}, {b}) at {v}");
                }
            }
        }
    }

    #[test]
    fn product_formula_examples() {
        for (a, b) in [(2, 5), (-1, -1), (3, 7), (-6, 10), (13, -2)] {
            assert!(product_formula(&rat(a), &rat(b)).unwrap().is_one());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn symmetric_and_bilinear(a in -60i64..60, b in -60i64..60, c in -60i64..60, vi in 0usize..6) {
            prop_assume!(a != 0 && b != 0 && c != 0);
            let v = PLACES[vi];
            let (a, b, c) = (rat(a), rat(b), rat(c));
            let ab = hilbert2(&a, &b, v).unwrap();
            prop_assert_eq!(ab, hilbert2(&b, &a, v).unwrap());
            let lhs = hilbert2(&(&a * &c), &b, v).unwrap();
            prop_assert_eq!(lhs, ab.mul(&hilbert2(&c, &b, v).unwrap()));
            prop_assert!(hilbert2(&a, &(-&a), v).unwrap().is_one());
            if a != rat(1) {
                prop_assert!(hilbert2(&a, &(rat(1) - &a), v).unwrap().is_one());
            }
        }

        #[test]
        fn product_formula_holds(a in -500i64..500, b in -500i64..500, d in 1i64..30) {
            prop_assume!(a != 0 && b != 0);
            prop_assert!(product_formula(&frac(a, d), &rat(b)).unwrap().is_one());
        }
    }
}
