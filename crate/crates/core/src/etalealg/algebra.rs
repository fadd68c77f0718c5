use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, unsupported, Error, Result};
use crate::exactpoly::arith::{squarefree_class, squarefree_part};
use crate::exactpoly::{
    discriminant, factor_rationals, has_root_in_extension, poly_order, product, rat, BigInt, BigRational,
    RationalPoly,
};

pub const MAX_ETALE_DEGREE: usize = 8;

/// An element of `Q^x / (Q^x)^2`, stored as its squarefree integer representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn from_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return invalid("zero has no square class");
        }
        Ok(SquareClass(squarefree_class(q)))
    }

    pub fn from_int(n: i64) -> Result<Self> {
        if n == 0 {
            return invalid("zero has no square class");
        }
        Ok(SquareClass(squarefree_part(&BigInt::from(n))))
    }

    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn rep(&self) -> &BigInt {
        &self.0
    }

    pub fn rep_rational(&self) -> BigRational {
        BigRational::from_integer(self.0.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass(squarefree_part(&(&self.0 * &other.0)))
    }

    /// `x^2 - D`, the quadratic algebra of the class.
    pub fn quadratic_poly(&self) -> RationalPoly {
        RationalPoly::new(vec![-self.rep_rational(), rat(0), rat(1)])
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let n: BigInt = s.trim().parse().map_err(serde::de::Error::custom)?;
        SquareClass::from_rational(&BigRational::from_integer(n)).map_err(serde::de::Error::custom)
    }
}

/// A finite product of number fields, each given by a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleAlgebra {
    factors: Vec<RationalPoly>,
}

impl EtaleAlgebra {
    /// `Q[x]/(f)` for a separable f.
    pub fn from_poly(f: &RationalPoly) -> Result<Self> {
        if f.is_zero() || f.degree() == 0 {
            return invalid("a nonconstant polynomial is required");
        }
        if f.degree() > MAX_ETALE_DEGREE {
            return unsupported(format!("degree {} exceeds {MAX_ETALE_DEGREE}", f.degree()));
        }
        if !f.is_squarefree() {
            return Err(Error::NotEtale(format!("{} has a repeated factor", f.pretty())));
        }
        let factors = factor_rationals(f)?.into_iter().map(|(p, _)| p).collect();
        Ok(EtaleAlgebra { factors })
    }

    /// Product of the algebras `Q[x]/(f_i)`; each `f_i` must be separable.
    pub fn from_factors(fs: &[RationalPoly]) -> Result<Self> {
        let mut factors = Vec::new();
        for f in fs {
            factors.extend(EtaleAlgebra::from_poly(f)?.factors);
        }
        if factors.iter().map(|p| p.degree()).sum::<usize>() > MAX_ETALE_DEGREE {
            return unsupported(format!("degree exceeds {MAX_ETALE_DEGREE}"));
        }
        factors.sort_by(poly_order);
        Ok(EtaleAlgebra { factors })
    }

    /// `Q^n`.
    pub fn split(n: usize) -> Self {
        EtaleAlgebra { factors: vec![RationalPoly::x(); n] }
    }

    pub fn product(&self, other: &EtaleAlgebra) -> Result<Self> {
        let mut fs = self.factors.clone();
        fs.extend(other.factors.iter().cloned());
        EtaleAlgebra::from_factors(&fs)
    }

    pub fn factors(&self) -> &[RationalPoly] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|p| p.degree()).sum()
    }

    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|p| p.degree()).collect()
    }

    pub fn is_field(&self) -> bool {
        self.factors.len() == 1
    }

    /// Number of degree-one factors.
    pub fn h0_count(&self) -> usize {
        self.factors.iter().filter(|p| p.degree() == 1).count()
    }

    /// A separable polynomial with this algebra, shifting repeated factors apart.
    pub fn presentation(&self) -> RationalPoly {
        let mut acc = RationalPoly::one();
        for f in &self.factors {
            let mut k = 0i64;
            loop {
                let g = f.affine_subst(&rat(1), &rat(-k));
                if acc.gcd(&g).degree() == 0 {
                    acc = &acc * &g;
                    break;
                }
                k += 1;
            }
        }
        acc
    }

    /// Square class of the discriminant.
    pub fn disc_class(&self) -> SquareClass {
        let mut acc = SquareClass::one();
        for f in &self.factors {
            if f.degree() > 1 {
                let d = discriminant(f).expect("separable factor");
                acc = acc.mul(&SquareClass::from_rational(&d).expect("nonzero discriminant"));
            }
        }
        acc
    }

    /// Isomorphism as Q-algebras: factors matched up to field isomorphism.
    pub fn is_isomorphic(&self, other: &EtaleAlgebra) -> Result<bool> {
        let mut da = self.factor_degrees();
        let mut db = other.factor_degrees();
        da.sort();
        db.sort();
        if da != db {
            return Ok(false);
        }
        let mut used = vec![false; other.factors.len()];
        for f in &self.factors {
            let mut found = false;
            for (j, g) in other.factors.iter().enumerate() {
                if used[j] || g.degree() != f.degree() {
                    continue;
                }
                if fields_isomorphic(f, g)? {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn defining_product(&self) -> RationalPoly {
        product(&self.factors)
    }

    pub fn factor_strings(&self) -> Vec<String> {
        self.factors.iter().map(|p| p.to_text()).collect()
    }

    pub fn describe(&self) -> String {
        self.factors.iter().map(|p| format!("Q[x]/({})", p.pretty())).collect::<Vec<_>>().join(" x ")
    }
}

/// Isomorphism test for two number fields: an embedding between fields of the
/// same degree is onto, so one root of g in `Q[t]/(f)` decides it.
pub fn fields_isomorphic(f: &RationalPoly, g: &RationalPoly) -> Result<bool> {
    if f.degree() != g.degree() {
        return Ok(false);
    }
    if f.degree() == 1 {
        return Ok(true);
    }
    has_root_in_extension(g, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RationalPoly {
        RationalPoly::parse(s).unwrap()
    }

    #[test]
    fn factor_structure() {
        assert_eq!(EtaleAlgebra::from_poly(&p("-1,0,1")).unwrap().factor_degrees(), vec![1, 1]);
        assert_eq!(EtaleAlgebra::from_poly(&p("-2,0,0,1")).unwrap().factor_degrees(), vec![3]);
        assert_eq!(EtaleAlgebra::from_poly(&p("1,0,-10,0,1")).unwrap().factor_degrees(), vec![4]);
    }

    #[test]
    fn rejects_repeated_factors() {
        let e = EtaleAlgebra::from_poly(&p("1,-2,1")).unwrap_err();
        assert_eq!(e.code(), "not_etale");
    }

    #[test]
    fn discriminant_classes() {
        assert!(EtaleAlgebra::from_poly(&p("-1,-3,0,1")).unwrap().disc_class().is_trivial());
        assert_eq!(EtaleAlgebra::from_poly(&p("-2,0,0,1")).unwrap().disc_class(), SquareClass::from_int(-3).unwrap());
        assert_eq!(EtaleAlgebra::from_poly(&p("-5,0,1")).unwrap().disc_class(), SquareClass::from_int(5).unwrap());
    }

    #[test]
    fn presentation_separates_repeats() {
        let a = EtaleAlgebra::from_factors(&[p("-2,0,1"), p("-8,0,1")]).unwrap();
        assert_eq!(a.factor_degrees(), vec![2, 2]);
        let f = a.presentation();
        assert!(f.is_squarefree());
        assert!(EtaleAlgebra::from_poly(&f).unwrap().is_isomorphic(&a).unwrap());
        assert_eq!(EtaleAlgebra::split(3).presentation().degree(), 3);
    }

    #[test]
    fn isomorphism_of_algebras() {
        let a = EtaleAlgebra::from_poly(&p("-2,0,1")).unwrap();
        let b = EtaleAlgebra::from_poly(&p("-8,0,1")).unwrap();
        let c = EtaleAlgebra::from_poly(&p("-3,0,1")).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(!a.is_isomorphic(&c).unwrap());
        let d = EtaleAlgebra::from_poly(&p("7,0,-6,0,1")).unwrap();
        let e = EtaleAlgebra::from_poly(&p("7,0,-6,0,1")).unwrap();
        assert!(d.is_isomorphic(&e).unwrap());
    }

    #[test]
    fn h0_counts() {
        // x(x^2 - 5), x(x-1)(x+1), x(x-1)(x^2-5)
        assert_eq!(EtaleAlgebra::from_poly(&p("0,-5,0,1")).unwrap().h0_count(), 1);
        assert_eq!(EtaleAlgebra::from_poly(&p("0,-1,0,1")).unwrap().h0_count(), 3);
        assert_eq!(EtaleAlgebra::from_poly(&p("0,5,-5,-1,1")).unwrap().h0_count(), 2);
    }
}
