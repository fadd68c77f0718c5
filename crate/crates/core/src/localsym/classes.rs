use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, unsupported, Result};
use crate::exactpoly::arith::valuation;
use crate::exactpoly::zmod::pow_mod;
use crate::exactpoly::BigRational;

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Real,
}

impl Place {
    /// Parses a prime or one of `inf`, `infty`, `real`.
    pub fn parse(s: &str) -> Result<Place> {
        let t = s.trim();
        if matches!(t, "inf" | "infty" | "infinity" | "real" | "oo") {
            return Ok(Place::Real);
        }
        let p: u64 = t.parse().map_err(|_| crate::Error::InvalidInput(format!("bad place '{s}'")))?;
        if !is_prime_u64(p) {
            return invalid(format!("{p} is not prime"));
        }
        Ok(Place::Finite(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest primitive root modulo an odd prime (1 for p = 2).
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut primes = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            primes.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    (2..p).find(|&g| primes.iter().all(|&l| pow_mod(g, (p - 1) / l, p) != 1)).unwrap()
}

/// Discrete log of a nonzero residue to the base of the smallest primitive root.
pub fn dlog_mod(a: u64, p: u64) -> u64 {
    let g = primitive_root(p);
    let a = a % p;
    let mut acc = 1u64;
    for k in 0..p - 1 {
        if acc == a {
            return k;
        }
        acc = acc * g % p;
    }
    panic!("{a} is not a unit modulo {p}")
}

/// `(v, u)` with `q = p^v u` and u a unit, u given modulo `modulus`.
pub(crate) fn split_unit(q: &BigRational, p: u64, modulus: u64) -> (i64, u64) {
    let v = valuation(q, p);
    let pb = BigInt::from(p);
    let mut n = q.numer().clone();
    let mut d = q.denom().clone();
    while (&n % &pb).is_zero() {
        n /= &pb;
    }
    while (&d % &pb).is_zero() {
        d /= &pb;
    }
    let m = BigInt::from(modulus);
    let n = n.mod_floor(&m).to_u64().unwrap();
    let d = d.mod_floor(&m).to_u64().unwrap();
    let dinv = (1..modulus).find(|x| (d * x) % modulus == 1).unwrap_or(1);
    (v, n * dinv % modulus)
}

/// A root-of-unity valued symbol `zeta_m^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymbolValue {
    pub m: u32,
    pub exp: u32,
}

impl SymbolValue {
    pub fn new(m: u32, exp: u32) -> Self {
        SymbolValue { m, exp: exp % m }
    }

    pub fn one(m: u32) -> Self {
        SymbolValue { m, exp: 0 }
    }

    pub fn sign(negative: bool) -> Self {
        SymbolValue { m: 2, exp: negative as u32 }
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    pub fn mul(&self, o: &SymbolValue) -> SymbolValue {
        debug_assert_eq!(self.m, o.m);
        SymbolValue::new(self.m, self.exp + o.exp)
    }

    pub fn inv(&self) -> SymbolValue {
        SymbolValue::new(self.m, self.m - self.exp)
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.exp) {
            (_, 0) => write!(f, "+1"),
            (2, _) => write!(f, "-1"),
            (m, k) => write!(f, "zeta{m}^{k}"),
        }
    }
}

impl Serialize for SymbolValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A class in `Q_v^x / (Q_v^x)^m` for m in {2, 3}, stored by canonical invariants.
///
/// * m = 2, p odd: `v mod 2` and whether the unit is a nonresidue; representative `g^unit p^v`.
/// * m = 2, p = 2: `v mod 2` and the unit modulo 8.
/// * m = 3, p != 3: `v mod 3` and the unit's discrete log modulo `gcd(3, p - 1)`.
/// * real place: the sign for m = 2, trivial for m = 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalClass {
    pub place: Place,
    pub m: u32,
    pub v: u32,
    pub unit: u64,
}

impl LocalClass {
    pub fn from_rational(q: &BigRational, place: Place, m: u32) -> Result<Self> {
        if q.is_zero() {
            return invalid("zero has no power class");
        }
        check_supported(place, m)?;
        let (v, unit) = match place {
            Place::Real => (0, if m == 2 { q.is_negative() as u64 } else { 0 }),
            Place::Finite(2) if m == 2 => {
                let (v, u) = split_unit(q, 2, 8);
                (v.rem_euclid(2) as u32, u)
            }
            Place::Finite(p) => {
                let (v, u) = split_unit(q, p, p);
                let units = num_integer::gcd(m as u64, p - 1);
                let k = if units == 1 { 0 } else { dlog_mod(u, p) % units };
                (v.rem_euclid(m as i64) as u32, k)
            }
        };
        Ok(LocalClass { place, m, v, unit })
    }

    pub fn from_int(n: i64, place: Place, m: u32) -> Result<Self> {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), place, m)
    }

    pub fn one(place: Place, m: u32) -> Self {
        LocalClass { place, m, v: 0, unit: if place == Place::Finite(2) && m == 2 { 1 } else { 0 } }
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::one(self.place, self.m)
    }

    /// The canonical integer representative.
    pub fn rep(&self) -> BigInt {
        match self.place {
            Place::Real => BigInt::from(if self.unit == 1 { -1 } else { 1 }),
            Place::Finite(2) if self.m == 2 => BigInt::from(self.unit) * BigInt::from(2).pow(self.v),
            Place::Finite(p) => {
                let u = pow_mod(primitive_root(p), self.unit, p);
                BigInt::from(u) * BigInt::from(p).pow(self.v)
            }
        }
    }

    pub fn rep_rational(&self) -> BigRational {
        BigRational::from_integer(self.rep())
    }

    pub fn mul(&self, o: &LocalClass) -> Result<LocalClass> {
        if self.place != o.place || self.m != o.m {
            return invalid("classes live over different fields");
        }
        Self::from_rational(&(self.rep_rational() * o.rep_rational()), self.place, self.m)
    }

    pub fn inv(&self) -> LocalClass {
        Self::from_rational(&(BigRational::from_integer(1.into()) / self.rep_rational()), self.place, self.m).unwrap()
    }
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep())
    }
}

fn check_supported(place: Place, m: u32) -> Result<()> {
    match (place, m) {
        (_, 2) => Ok(()),
        (Place::Finite(3), 3) => unsupported("cube classes at p = 3 are wild"),
        (_, 3) => Ok(()),
        _ => unsupported(format!("power classes for m = {m} are not supported")),
    }
}

/// All classes of `Q_v^x / (Q_v^x)^m`, sorted.
pub fn power_classes(place: Place, m: u32) -> Result<Vec<LocalClass>> {
    check_supported(place, m)?;
    let mut out = Vec::new();
    match place {
        Place::Real => {
            out.push(LocalClass::one(place, m));
            if m == 2 {
                out.push(LocalClass { place, m, v: 0, unit: 1 });
            }
        }
        Place::Finite(2) if m == 2 => {
            for v in 0..2 {
                for unit in [1, 3, 5, 7] {
                    out.push(LocalClass { place, m, v, unit });
                }
            }
        }
        Place::Finite(p) => {
            let units = num_integer::gcd(m as u64, p - 1);
            for v in 0..m {
                for unit in 0..units {
                    out.push(LocalClass { place, m, v, unit });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn square_classes(place: Place) -> Result<Vec<LocalClass>> {
    power_classes(place, 2)
}

pub fn cube_classes(p: u64) -> Result<Vec<LocalClass>> {
    power_classes(Place::Finite(p), 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{frac, rat};
    use std::collections::BTreeSet;

    /// Classes of `(Z/p^k)^x` modulo m-th powers, counted by brute force, times m for the valuation.
    fn brute_count(p: u64, k: u32, m: u64) -> usize {
        let n = p.pow(k);
        let units: Vec<u64> = (1..n).filter(|x| x % p != 0).collect();
        let powers: BTreeSet<u64> = units.iter().map(|&x| pow_mod(x, m, n)).collect();
        units.len() / powers.len() * m as usize
    }

    #[test]
    fn class_counts() {
        assert_eq!(square_classes(Place::Finite(5)).unwrap().len(), 4);
        assert_eq!(square_classes(Place::Finite(2)).unwrap().len(), 8);
        assert_eq!(square_classes(Place::Real).unwrap().len(), 2);
        assert_eq!(cube_classes(7).unwrap().len(), 9);
        assert_eq!(cube_classes(5).unwrap().len(), 3);
        assert!(cube_classes(3).unwrap_err().is_unsupported());
        assert_eq!(brute_count(7, 4, 3), 9);
        assert_eq!(brute_count(5, 3, 2), 4);
        assert_eq!(brute_count(2, 5, 2), 8);
        assert_eq!(brute_count(13, 2, 3), cube_classes(13).unwrap().len());
    }

    #[test]
    fn representatives() {
        let reps: Vec<BigInt> = square_classes(Place::Finite(5)).unwrap().iter().map(|c| c.rep()).collect();
        let mut r: Vec<i64> = reps.iter().map(|b| b.to_i64().unwrap()).collect();
        r.sort();
        assert_eq!(r, vec![1, 2, 5, 10]);
        for c in power_classes(Place::Finite(7), 3).unwrap() {
            assert_eq!(LocalClass::from_rational(&c.rep_rational(), c.place, 3).unwrap(), c);
        }
        for c in square_classes(Place::Finite(2)).unwrap() {
            assert_eq!(LocalClass::from_rational(&c.rep_rational(), c.place, 2).unwrap(), c);
        }
    }

    #[test]
    fn classes_ignore_powers() {
        let p5 = Place::Finite(5);
        let a = LocalClass::from_rational(&frac(3, 7), p5, 2).unwrap();
        let b = LocalClass::from_rational(&(frac(3, 7) * frac(36, 25)), p5, 2).unwrap();
        assert_eq!(a, b);
        let c = LocalClass::from_rational(&frac(2 * 27, 343), Place::Finite(7), 3).unwrap();
        assert_eq!(c, LocalClass::from_rational(&rat(2), Place::Finite(7), 3).unwrap().mul(&LocalClass::from_int(1, Place::Finite(7), 3).unwrap()).unwrap());
        assert!(LocalClass::from_int(17, Place::Finite(2), 2).unwrap().is_trivial());
        assert!(LocalClass::from_int(-4, Place::Real, 3).unwrap().is_trivial());
    }

    #[test]
    fn symbol_display() {
        assert_eq!(SymbolValue::new(2, 1).to_string(), "-1");
        assert_eq!(SymbolValue::one(3).to_string(), "+1");
        assert_eq!(SymbolValue::new(3, 5).to_string(), "zeta3^2");
        assert_eq!(serde_json::to_string(&SymbolValue::new(2, 1)).unwrap(), "\"-1\"");
    }

    #[test]
    fn places() {
        assert_eq!(Place::parse("inf").unwrap(), Place::Real);
        assert_eq!(Place::parse("13").unwrap(), Place::Finite(13));
        assert!(Place::parse("15").is_err());
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(dlog_mod(6, 7), 3);
    }
}
