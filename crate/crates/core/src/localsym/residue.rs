use serde::Serialize;

use super::SymbolValue;
use crate::error::{invalid, unsupported, Result};
use crate::exactpoly::arith::factor_integer;
use crate::exactpoly::zmod::{self, Zp};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// The finite field `F_p[t]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub p: u64,
    pub modulus: Zp,
    generator: Zp,
}

fn is_irreducible_small(f: &Zp, p: u64) -> bool {
    let parts = zmod::distinct_degree(f, p);
    parts.len() == 1 && parts[0].1 == zmod::deg(f) as usize
}

impl ResidueField {
    /// `F_p[t]/(modulus)`; the modulus must be monic irreducible.
    pub fn with_modulus(p: u64, modulus: Zp) -> Result<Self> {
        let modulus = zmod::monic(&zmod::trim(modulus), p);
        if zmod::deg(&modulus) < 1 || !is_irreducible_small(&modulus, p) {
            return invalid("residue field modulus must be irreducible");
        }
        let mut k = ResidueField { p, modulus, generator: vec![] };
        k.generator = k.find_generator();
        Ok(k)
    }

    /// `F_{p^f}` with the lexicographically first irreducible modulus.
    pub fn new(p: u64, f: usize) -> Result<Self> {
        if f == 0 || f > 3 {
            return unsupported(format!("residue degree {f} is outside 1..=3"));
        }
        if f == 1 {
            return Self::with_modulus(p, vec![0, 1]);
        }
        let count = p.pow(f as u32);
        for idx in 0..count {
            let mut m: Zp = (0..f).map(|i| (idx / p.pow(i as u32)) % p).collect();
            m.push(1);
            if is_irreducible_small(&m, p) {
                return Self::with_modulus(p, m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn degree(&self) -> usize {
        zmod::deg(&self.modulus) as usize
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn reduce(&self, a: &Zp) -> Zp {
        let a: Zp = a.iter().map(|c| c % self.p).collect();
        zmod::rem(&zmod::trim(a), &self.modulus, self.p)
    }

    pub fn constant(&self, c: u64) -> Zp {
        self.reduce(&vec![c % self.p])
    }

    pub fn one(&self) -> Zp {
        self.constant(1)
    }

    pub fn is_zero(&self, a: &Zp) -> bool {
        self.reduce(a).is_empty()
    }

    pub fn mul(&self, a: &Zp, b: &Zp) -> Zp {
        zmod::rem(&zmod::mul(a, b, self.p), &self.modulus, self.p)
    }

    pub fn add(&self, a: &Zp, b: &Zp) -> Zp {
        zmod::add(a, b, self.p)
    }

    pub fn pow(&self, a: &Zp, e: u64) -> Zp {
        zmod::pow_rem(&self.reduce(a), &BigUint::from(e), &self.modulus, self.p)
    }

    /// `a^k` for a signed exponent; a must be nonzero.
    pub fn pow_signed(&self, a: &Zp, k: i64) -> Zp {
        let q1 = self.order() - 1;
        let e = k.rem_euclid(q1 as i64) as u64;
        self.pow(a, e)
    }

    pub fn inv(&self, a: &Zp) -> Zp {
        self.pow(a, self.order() - 2)
    }

    fn find_generator(&self) -> Zp {
        let q1 = self.order() - 1;
        let primes: Vec<u64> =
            factor_integer(&BigUint::from(q1)).into_iter().map(|(l, _)| l.to_u64().unwrap()).collect();
        for idx in 1..self.order() {
            let g: Zp = zmod::trim((0..self.degree()).map(|i| (idx / self.p.pow(i as u32)) % self.p).collect());
            if g.is_empty() {
                continue;
            }
            if primes.iter().all(|l| self.pow(&g, q1 / l) != self.one()) {
                return g;
            }
        }
        unreachable!("the multiplicative group is cyclic")
    }

    pub fn generator(&self) -> &Zp {
        &self.generator
    }

    /// The element `g^((q-1)/m)` generating `mu_m`.
    pub fn root_of_unity(&self, m: u64) -> Result<Zp> {
        let q1 = self.order() - 1;
        if q1 % m != 0 {
            return invalid(format!("mu_{m} is not contained in F_{}", self.order()));
        }
        Ok(self.pow(&self.generator, q1 / m))
    }

    /// k with `zeta^k = z`, for z in the cyclic group generated by zeta of order m.
    pub fn log_base(&self, zeta: &Zp, z: &Zp, m: u64) -> Result<u64> {
        let z = self.reduce(z);
        let mut acc = self.one();
        for k in 0..m {
            if acc == z {
                return Ok(k);
            }
            acc = self.mul(&acc, zeta);
        }
        invalid("element is not a power of the given root of unity")
    }

    /// Discrete logarithm to the base of the fixed generator.
    pub fn dlog(&self, a: &Zp) -> Result<u64> {
        let a = self.reduce(a);
        if a.is_empty() {
            return invalid("zero has no logarithm");
        }
        let mut acc = self.one();
        for k in 0..self.order() - 1 {
            if acc == a {
                return Ok(k);
            }
            acc = self.mul(&acc, &self.generator);
        }
        unreachable!("generator spans the group")
    }

    pub fn all_units(&self) -> Vec<Zp> {
        let mut out = Vec::new();
        let mut acc = self.one();
        for _ in 0..self.order() - 1 {
            out.push(acc.clone());
            acc = self.mul(&acc, &self.generator);
        }
        out
    }
}

/// A tame extension of `Q_p` described by its residue field and ramification index,
/// with a fixed uniformizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldDesc {
    pub residue: ResidueField,
    pub e: u32,
}

impl Serialize for LocalFieldDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LocalFieldDesc", 3)?;
        st.serialize_field("p", &self.residue.p)?;
        st.serialize_field("f", &self.residue.degree())?;
        st.serialize_field("e", &self.e)?;
        st.end()
    }
}

impl LocalFieldDesc {
    pub fn new(p: u64, f: usize, e: u32) -> Result<Self> {
        if e == 0 || e > 3 {
            return unsupported(format!("ramification index {e} is outside 1..=3"));
        }
        if e as u64 % p == 0 {
            return unsupported("wild ramification is not supported");
        }
        Ok(LocalFieldDesc { residue: ResidueField::new(p, f)?, e })
    }

    pub fn qp(p: u64) -> Result<Self> {
        Self::new(p, 1, 1)
    }

    pub fn with_residue(residue: ResidueField, e: u32) -> Self {
        LocalFieldDesc { residue, e }
    }

    pub fn p(&self) -> u64 {
        self.residue.p
    }

    pub fn q(&self) -> u64 {
        self.residue.order()
    }

    /// The representatives `pi^v * g^k` of `F^x / (F^x)^m`, for p not dividing m.
    pub fn power_classes(&self, m: u64) -> Result<Vec<LocalElem>> {
        if self.p() % m == 0 {
            return unsupported(format!("{m}-th power classes at p = {} are wild", self.p()));
        }
        let units = num_integer::gcd(m, self.q() - 1);
        let mut out = Vec::new();
        for v in 0..m as i64 {
            for k in 0..units {
                out.push(LocalElem { v, residue: self.residue.pow(self.residue.generator(), k) });
            }
        }
        Ok(out)
    }
}

/// `pi^v * u` with only the residue of the unit u recorded; this determines
/// the class modulo m-th powers when p does not divide m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalElem {
    pub v: i64,
    pub residue: Zp,
}

impl LocalElem {
    pub fn unit(residue: Zp) -> Self {
        LocalElem { v: 0, residue }
    }

    pub fn mul(&self, o: &LocalElem, k: &ResidueField) -> LocalElem {
        LocalElem { v: self.v + o.v, residue: k.mul(&self.residue, &o.residue) }
    }

    pub fn pow(&self, e: i64, k: &ResidueField) -> LocalElem {
        LocalElem { v: self.v * e, residue: k.pow_signed(&self.residue, e) }
    }

    /// Class modulo m-th powers: `(v mod m, dlog(u) mod gcd(m, q-1))`.
    pub fn class(&self, m: u64, k: &ResidueField) -> Result<(u64, u64)> {
        let units = num_integer::gcd(m, k.order() - 1);
        Ok((self.v.rem_euclid(m as i64) as u64, k.dlog(&self.residue)? % units))
    }
}

/// The m-th power residue symbol value `omega((-1)^{ab} a^b / b^a)^{(q-1)/m}` as an element of `mu_m(F_q)`.
pub fn tame_symbol_residue(f: &LocalFieldDesc, a: &LocalElem, b: &LocalElem, m: u64) -> Result<Zp> {
    let k = &f.residue;
    if f.p() % m == 0 {
        return unsupported(format!("the tame symbol needs p not dividing {m}"));
    }
    if (f.q() - 1) % m != 0 {
        return invalid(format!("mu_{m} is not contained in the residue field F_{}", f.q()));
    }
    if k.is_zero(&a.residue) || k.is_zero(&b.residue) {
        return invalid("symbol arguments must be nonzero");
    }
    let mut c = k.mul(&k.pow_signed(&a.residue, b.v), &k.pow_signed(&b.residue, -a.v));
    if (a.v * b.v) % 2 != 0 {
        c = k.mul(&c, &k.constant(f.p() - 1));
    }
    Ok(k.pow(&c, (f.q() - 1) / m))
}

/// The tame symbol as an exponent of `zeta`, or of the standard root of unity when `zeta` is None.
pub fn tame_symbol(f: &LocalFieldDesc, a: &LocalElem, b: &LocalElem, m: u64, zeta: Option<&Zp>) -> Result<SymbolValue> {
    let z = tame_symbol_residue(f, a, b, m)?;
    let base = match zeta {
        Some(z0) => f.residue.reduce(z0),
        None => f.residue.root_of_unity(m)?,
    };
    Ok(SymbolValue::new(m as u32, f.residue.log_base(&base, &z, m)? as u32))
}

/// `<a, b>_L` on a product of local fields: the product of the factor symbols,
/// each measured against its own root of unity from `zetas` when given.
pub fn hilbert_etale(
    factors: &[LocalFieldDesc],
    a: &[LocalElem],
    b: &[LocalElem],
    m: u64,
    zetas: Option<&[Zp]>,
) -> Result<SymbolValue> {
    if a.len() != factors.len() || b.len() != factors.len() {
        return invalid("one element per factor is required");
    }
    if let Some(z) = zetas {
        if z.len() != factors.len() {
            return invalid("one root of unity per factor is required");
        }
    }
    let mut acc = SymbolValue::one(m as u32);
    for (i, f) in factors.iter().enumerate() {
        let s = tame_symbol(f, &a[i], &b[i], m, zetas.map(|z| &z[i]))?;
        acc = acc.mul(&s);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_fields() {
        let k = ResidueField::new(5, 2).unwrap();
        assert_eq!(k.order(), 25);
        assert_eq!(k.all_units().len(), 24);
        let g = k.generator().clone();
        assert_eq!(k.pow(&g, 24), k.one());
        assert_ne!(k.pow(&g, 12), k.one());
        assert_eq!(ResidueField::new(7, 3).unwrap().order(), 343);
        assert!(ResidueField::with_modulus(5, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn unramified_quadratic_symbol() {
        let f = LocalFieldDesc::new(5, 2, 1).unwrap();
        let k = &f.residue;
        let nonsquare = k.generator().clone();
        let pi = LocalElem { v: 1, residue: k.one() };
        let s = tame_symbol(&f, &LocalElem::unit(nonsquare), &pi, 2, None).unwrap();
        assert_eq!(s.to_string(), "-1");
        // F_5 elements are squares in F_25
        let two = LocalElem::unit(k.constant(2));
        assert!(tame_symbol(&f, &two, &pi, 2, None).unwrap().is_one());
    }

    #[test]
    fn cubic_symbol_on_q7() {
        let f = LocalFieldDesc::qp(7).unwrap();
        let seven = LocalElem { v: 1, residue: f.residue.one() };
        assert!(tame_symbol(&f, &seven, &seven, 3, None).unwrap().is_one());
        let u = LocalElem::unit(f.residue.constant(3));
        let w = LocalElem::unit(f.residue.constant(5));
        assert!(tame_symbol(&f, &u, &w, 3, None).unwrap().is_one());
        assert_eq!(f.power_classes(3).unwrap().len(), 9);
        assert_eq!(LocalFieldDesc::qp(5).unwrap().power_classes(3).unwrap().len(), 3);
        assert!(LocalFieldDesc::qp(3).unwrap().power_classes(3).is_err());
    }

    #[test]
    fn etale_products() {
        let q5 = LocalFieldDesc::qp(5).unwrap();
        let fs = vec![q5.clone(), q5.clone(), q5.clone()];
        let one = LocalElem::unit(q5.residue.one());
        let a = vec![LocalElem::unit(q5.residue.constant(2)), one.clone(), one.clone()];
        let b = vec![LocalElem { v: 1, residue: q5.residue.one() }, one.clone(), one.clone()];
        assert_eq!(hilbert_etale(&fs, &a, &b, 2, None).unwrap().to_string(), "-1");
        let a2 = vec![a[0].clone(), a[0].clone(), one.clone()];
        let b2 = vec![b[0].clone(), b[0].clone(), one.clone()];
        assert!(hilbert_etale(&fs, &a2, &b2, 2, None).unwrap().is_one());
        assert!(hilbert_etale(&fs, &a2[..2], &b2, 2, None).is_err());
    }

    #[test]
    fn wild_cases_rejected() {
        assert!(LocalFieldDesc::new(3, 1, 3).unwrap_err().is_unsupported());
        assert!(LocalFieldDesc::new(2, 1, 2).unwrap_err().is_unsupported());
        let f = LocalFieldDesc::qp(3).unwrap();
        let one = LocalElem::unit(f.residue.one());
        assert!(tame_symbol(&f, &one, &one, 3, None).unwrap_err().is_unsupported());
    }
}
