use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::etalealg::SquareClass;
use crate::exactpoly::{format_rational, parse_rational, rat, sqrt_lower, sqrt_upper, BigRational, ComplexBall, RationalPoly};

/// `x + y sqrt(d)` in `Q[sqrt d]`, d squarefree; `d = 1` is the split algebra `Q x Q`
/// with coordinates `(x + y, x - y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub disc: SquareClass,
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadElem {
    pub fn new(disc: SquareClass, x: BigRational, y: BigRational) -> Self {
        QuadElem { disc, x, y }
    }

    pub fn rational(disc: SquareClass, x: BigRational) -> Self {
        QuadElem { disc, x, y: BigRational::zero() }
    }

    pub fn one(disc: SquareClass) -> Self {
        Self::rational(disc, rat(1))
    }

    /// Element of the split algebra with coordinates `(u, v)`.
    pub fn split(u: BigRational, v: BigRational) -> Self {
        let two = rat(2);
        QuadElem { disc: SquareClass::one(), x: (&u + &v) / &two, y: (u - v) / two }
    }

    /// `"x,y"`.
    pub fn parse(disc: SquareClass, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return invalid(format!("expected \"x,y\", got {s:?}"));
        }
        Ok(QuadElem { disc, x: parse_rational(parts[0])?, y: parse_rational(parts[1])? })
    }

    fn d(&self) -> BigRational {
        self.disc.rep_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.y.is_zero() && self.x.is_one()
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        debug_assert_eq!(self.disc, o.disc);
        QuadElem { disc: self.disc.clone(), x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem { disc: self.disc.clone(), x: -&self.x, y: -&self.y }
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        debug_assert_eq!(self.disc, o.disc);
        let d = self.d();
        QuadElem {
            disc: self.disc.clone(),
            x: &self.x * &o.x + d * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }

    pub fn scale(&self, c: &BigRational) -> QuadElem {
        QuadElem { disc: self.disc.clone(), x: &self.x * c, y: &self.y * c }
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { disc: self.disc.clone(), x: self.x.clone(), y: -&self.y }
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - self.d() * &self.y * &self.y
    }

    pub fn trace(&self) -> BigRational {
        &self.x * rat(2)
    }

    pub fn inv(&self) -> Option<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&(BigRational::one() / n)))
    }

    pub fn pow(&self, k: i64) -> Option<QuadElem> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = QuadElem::one(self.disc.clone());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// `X^2 - tr X + N`.
    pub fn charpoly(&self) -> RationalPoly {
        RationalPoly::new(vec![self.norm(), -self.trace(), rat(1)])
    }

    /// Image under `sqrt d -> i sqrt|d|` (d < 0) or the positive root (d > 0).
    pub fn to_ball(&self, bits: u32) -> ComplexBall {
        let a = self.d().abs();
        let lo = sqrt_lower(&a, bits);
        let hi = sqrt_upper(&a, bits);
        let mid = (&lo + &hi) / rat(2);
        let rad = (hi - lo) / rat(2) * self.y.abs();
        let off = &self.y * mid;
        if self.d().is_negative() {
            ComplexBall { re: self.x.clone(), im: off, radius: rad }
        } else {
            ComplexBall { re: &self.x + off, im: BigRational::zero(), radius: rad }
        }
    }

    pub fn to_pair(&self) -> (String, String) {
        (format_rational(&self.x), format_rational(&self.y))
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt({})", format_rational(&self.x), format_rational(&self.y), self.disc)
    }
}

impl Serialize for QuadElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadElem", 3)?;
        st.serialize_field("disc", &self.disc)?;
        st.serialize_field("x", &format_rational(&self.x))?;
        st.serialize_field("y", &format_rational(&self.y))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::frac;

    fn cls(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = QuadElem::new(cls(-15), frac(1, 4), frac(1, 4));
        assert_eq!(a.norm(), rat(1));
        let b = QuadElem::new(cls(-15), rat(2), rat(-3));
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        assert!(b.mul(&b.inv().unwrap()).is_one());
        assert_eq!(a.pow(3).unwrap(), a.mul(&a).mul(&a));
    }

    #[test]
    fn split_coordinates() {
        let u = QuadElem::split(rat(2), frac(1, 2));
        assert_eq!(u.norm(), rat(1));
        assert_eq!(u.trace(), frac(5, 2));
        let v = u.mul(&u);
        assert_eq!(v, QuadElem::split(rat(4), frac(1, 4)));
    }

    #[test]
    fn ball_embedding() {
        let a = QuadElem::new(cls(-14), frac(-5, 4), frac(1, 2));
        let b = a.to_ball(80);
        assert!((b.re_f64() + 1.25).abs() < 1e-12);
        assert!((b.im_f64() - 14f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(b.radius_log2() < -70.0);
    }
}
