//! Truncated p-adic numbers `p^v * u` with u a unit known modulo `p^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactpoly::arith::valuation_int;
use crate::exactpoly::BigRational;

pub const PADIC_PRECISION: u32 = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    pub p: u64,
    /// None for zero (to the working precision).
    pub v: Option<i64>,
    pub unit: BigInt,
}

fn modulus(p: u64) -> BigInt {
    BigInt::from(p).pow(PADIC_PRECISION)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

impl Padic {
    pub fn zero(p: u64) -> Self {
        Padic { p, v: None, unit: BigInt::zero() }
    }

    pub fn from_rational(q: &BigRational, p: u64) -> Self {
        if q.is_zero() {
            return Self::zero(p);
        }
        let vn = valuation_int(q.numer(), p) as i64;
        let vd = valuation_int(q.denom(), p) as i64;
        let pb = BigInt::from(p);
        let n = q.numer() / pb.pow(vn as u32);
        let d = q.denom() / pb.pow(vd as u32);
        let m = modulus(p);
        let unit = (n * inv_mod(&d.mod_floor(&m), &m)).mod_floor(&m);
        Padic { p, v: Some(vn - vd), unit }
    }

    pub fn from_int(n: i64, p: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), p)
    }

    fn normalize(p: u64, v: i64, x: BigInt) -> Self {
        let m = modulus(p);
        let x = x.mod_floor(&m);
        if x.is_zero() {
            return Self::zero(p);
        }
        let k = valuation_int(&x, p);
        let pb = BigInt::from(p);
        Padic { p, v: Some(v + k as i64), unit: (x / pb.pow(k)).mod_floor(&m) }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_none()
    }

    pub fn mul(&self, o: &Padic) -> Padic {
        match (self.v, o.v) {
            (Some(a), Some(b)) => Padic { p: self.p, v: Some(a + b), unit: (&self.unit * &o.unit).mod_floor(&modulus(self.p)) },
            _ => Self::zero(self.p),
        }
    }

    pub fn add(&self, o: &Padic) -> Padic {
        let (a, b) = match (self.v, o.v) {
            (None, _) => return o.clone(),
            (_, None) => return self.clone(),
            (Some(a), Some(b)) => (a, b),
        };
        let m = a.min(b);
        let pb = BigInt::from(self.p);
        let x = &self.unit * pb.pow((a - m) as u32) + &o.unit * pb.pow((b - m) as u32);
        Self::normalize(self.p, m, x)
    }

    pub fn neg(&self) -> Padic {
        Padic { p: self.p, v: self.v, unit: (-&self.unit).mod_floor(&modulus(self.p)) }
    }

    pub fn inv(&self) -> Option<Padic> {
        let v = self.v?;
        let m = modulus(self.p);
        Some(Padic { p: self.p, v: Some(-v), unit: inv_mod(&self.unit, &m) })
    }

    /// Residue of the unit part modulo p.
    pub fn unit_residue(&self) -> u64 {
        (&self.unit % BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Square root for p odd, if one exists.
    pub fn sqrt(&self) -> Option<Padic> {
        let v = match self.v {
            None => return Some(self.clone()),
            Some(v) => v,
        };
        if v % 2 != 0 || self.p == 2 {
            return None;
        }
        let p = self.p;
        let r0 = self.unit_residue();
        let s0 = (1..p).find(|s| s * s % p == r0)?;
        // Newton: s <- s - (s^2 - u) / (2 s)
        let m = modulus(p);
        let mut s = BigInt::from(s0);
        for _ in 0..8 {
            let num = (&s * &s - &self.unit).mod_floor(&m);
            let den = inv_mod(&(BigInt::from(2) * &s).mod_floor(&m), &m);
            s = (&s - num * den).mod_floor(&m);
        }
        debug_assert!(((&s * &s - &self.unit).mod_floor(&m)).is_zero());
        Some(Padic { p, v: Some(v / 2), unit: s })
    }

    pub fn is_square(&self) -> bool {
        if self.p == 2 {
            return match self.v {
                None => true,
                Some(v) => v % 2 == 0 && (&self.unit % BigInt::from(8)) == BigInt::one(),
            };
        }
        self.sqrt().is_some()
    }

    pub fn unit_is_positive(&self) -> bool {
        !self.unit.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::frac;

    #[test]
    fn arithmetic() {
        let a = Padic::from_rational(&frac(10, 3), 5);
        assert_eq!(a.v, Some(1));
        let b = Padic::from_rational(&frac(-10, 3), 5);
        assert!(a.add(&b).is_zero());
        let c = a.mul(&a.inv().unwrap());
        assert_eq!((c.v, c.unit_residue()), (Some(0), 1));
        let d = Padic::from_int(1, 5).add(&Padic::from_int(24, 5));
        assert_eq!(d.v, Some(2));
    }

    #[test]
    fn square_roots() {
        let s = Padic::from_int(-1, 5).sqrt().unwrap();
        assert!(s.mul(&s).add(&Padic::from_int(1, 5)).is_zero());
        assert!(Padic::from_int(2, 5).sqrt().is_none());
        assert!(Padic::from_int(5, 5).sqrt().is_none());
        assert!(Padic::from_int(-3, 7).is_square());
        assert!(Padic::from_int(17, 2).is_square());
        assert!(!Padic::from_int(5, 2).is_square());
    }
}
