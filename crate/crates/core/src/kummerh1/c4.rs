use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::quad::QuadElem;
use crate::error::{invalid, unsupported, Error, Result};
use crate::etalealg::{depress_quartic, fields_isomorphic, EtaleAlgebra, SquareClass};
use crate::exactpoly::{
    arith::squarefree_class, rat, rational_roots, rational_sqrt, BigRational, QuotientRing, RationalPoly,
};

/// A class in `H^1(Q, Z/4)` for the module twisted by `Q[sqrt D]`, as a pair
/// `(alpha, c)` with `alpha` in `Q[sqrt(-D)]`, `N(alpha) = c^4`, modulo `(beta^4, N(beta))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoclassC4 {
    pub d: SquareClass,
    pub alpha: QuadElem,
    #[serde(serialize_with = "ser_rational")]
    pub c: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactpoly::format_rational(q))
}

/// `Q[sqrt(-D)]`.
pub fn alpha_ring(d: &SquareClass) -> SquareClass {
    d.mul(&SquareClass::from_int(-1).unwrap())
}

impl CoclassC4 {
    pub fn new(d: SquareClass, alpha: QuadElem, c: BigRational) -> Result<Self> {
        if alpha.disc != alpha_ring(&d) {
            return invalid(format!("alpha must lie in Q[sqrt({})]", alpha_ring(&d)));
        }
        if c.is_zero() || alpha.is_zero() {
            return invalid("alpha and c must be nonzero");
        }
        let c4 = &c * &c * &c * &c;
        if alpha.norm() != c4 {
            return invalid(format!("N(alpha) = {} but c^4 = {}", alpha.norm(), c4));
        }
        Ok(CoclassC4 { d, alpha, c })
    }

    /// `(a, b, c)` with `alpha = a + b sqrt(-D)`.
    pub fn from_abc(d: SquareClass, a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        let ring = alpha_ring(&d);
        Self::new(d, QuadElem::new(ring, a, b), c)
    }

    pub fn zero(d: SquareClass) -> Self {
        let ring = alpha_ring(&d);
        CoclassC4 { d, alpha: QuadElem::one(ring), c: rat(1) }
    }

    /// The datum `(-4, 2)`.
    pub fn mirror_datum(d: SquareClass) -> Self {
        let ring = alpha_ring(&d);
        CoclassC4 { d, alpha: QuadElem::rational(ring, rat(-4)), c: rat(2) }
    }

    /// `x^4 - 4c x^2 + (2c^2 - 2a)`.
    pub fn quartic(&self) -> RationalPoly {
        quartic_of(&self.alpha, &self.c)
    }

    /// Data with `b = 0` give polynomials with repeated roots.
    pub fn is_degenerate(&self) -> bool {
        self.alpha.is_rational()
    }

    /// Multiplies by the trivial datum `(beta^4, N(beta))`.
    pub fn twist_by(&self, beta: &QuadElem) -> Option<CoclassC4> {
        let n = beta.norm();
        if n.is_zero() {
            return None;
        }
        let b2 = beta.mul(beta);
        Some(CoclassC4 { d: self.d.clone(), alpha: self.alpha.mul(&b2.mul(&b2)), c: &self.c * n })
    }
}

fn quartic_of(alpha: &QuadElem, c: &BigRational) -> RationalPoly {
    let two = rat(2);
    RationalPoly::new(vec![&two * c * c - &two * &alpha.x, rat(0), rat(-4) * c, rat(0), rat(1)])
}

/// Small `beta = x + y sqrt(-D)` with `y != 0`, by height.
fn small_betas(ring: &SquareClass) -> Vec<QuadElem> {
    let mut out = Vec::new();
    for h in 1..=6i64 {
        for x in 1..=h {
            for y in 1..=h {
                if x.max(y) == h {
                    out.push(QuadElem::new(ring.clone(), rat(x), rat(y)));
                    out.push(QuadElem::new(ring.clone(), rat(x), rat(-y)));
                }
            }
        }
    }
    out
}

/// A datum in the same class whose quartic is separable.
pub fn separable_representative(cc: &CoclassC4) -> Result<CoclassC4> {
    if cc.quartic().is_squarefree() {
        return Ok(cc.clone());
    }
    for beta in small_betas(&cc.alpha.disc) {
        if let Some(t) = cc.twist_by(&beta) {
            if t.quartic().is_squarefree() {
                return Ok(t);
            }
        }
    }
    Err(Error::Unsupported("no separable representative found in the bounded search".into()))
}

/// The quartic algebra `(theta^2 - 2c)^2 = 2a + 2c^2` of a class.
pub fn c4_encode(cc: &CoclassC4) -> Result<EtaleAlgebra> {
    CoclassC4::new(cc.d.clone(), cc.alpha.clone(), cc.c.clone())?;
    EtaleAlgebra::from_poly(&separable_representative(cc)?.quartic())
}

#[derive(Clone, Debug, Serialize)]
pub struct C4Decoded {
    pub coclass: CoclassC4,
    pub sign_ambiguous: bool,
}

/// An even quartic `x^4 + P x^2 + Q` generating the same algebra as f, built from
/// `omega = (theta_1 - theta_2)/2` for a Galois-stable pairing of the roots.
pub fn even_form(f: &RationalPoly) -> Result<Option<RationalPoly>> {
    let (p, q, r) = depress_quartic(f)?;
    if q.is_zero() {
        return Ok(Some(RationalPoly::new(vec![r, rat(0), p, rat(0), rat(1)])));
    }
    for y0 in cubic_resolvent_roots(&p, &q, &r) {
        let z0 = &p - &y0;
        let pp = (&p + &y0) / rat(2);
        let qq = (&z0 * &z0 + rat(4) * &z0 * &y0 + rat(16) * &r) / rat(16);
        let g = RationalPoly::new(vec![qq, rat(0), pp, rat(0), rat(1)]);
        if g.is_squarefree() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Recovers `(D, alpha, c)` from a quartic algebra with a quadratic subalgebra.
pub fn c4_decode(l: &EtaleAlgebra) -> Result<C4Decoded> {
    if l.degree() != 4 {
        return invalid(format!("expected a quartic algebra, got degree {}", l.degree()));
    }
    // split normal forms: L0 = Q x Q x Q[sqrt D] and Q[sqrt D]^2
    let degs = l.factor_degrees();
    if degs == [1, 1, 2] {
        let d = l.disc_class();
        return Ok(C4Decoded { coclass: CoclassC4::zero(d), sign_ambiguous: false });
    }
    if degs == [2, 2] && fields_isomorphic(&l.factors()[0], &l.factors()[1])? {
        let d = EtaleAlgebra::from_factors(&l.factors()[..1])?.disc_class();
        return Ok(C4Decoded { coclass: CoclassC4::mirror_datum(d), sign_ambiguous: false });
    }
    let mut f = l.presentation();
    if cubic_resolvent_roots_of(&f)?.is_empty() {
        return unsupported("the algebra has no quadratic subalgebra");
    }
    let k = QuotientRing::new(&f);
    let mut shift = 0i64;
    let g = loop {
        if f.is_squarefree() {
            if let Some(g) = even_form(&f)? {
                break g;
            }
        }
        shift += 1;
        if shift > 16 {
            return unsupported("no separable even form found");
        }
        // Tschirnhaus transform t -> t^2 + shift t
        f = k.charpoly(&RationalPoly::from_ints(&[0, shift, 1]));
    };
    let (pp, qq) = (g.coeff(2), g.coeff(0));
    let c = -&pp / rat(4);
    let a = &c * &c - &qq / rat(2);
    let n = &c * &c * &c * &c - &a * &a;
    if n.is_zero() {
        return Err(Error::InvalidInput("even form is degenerate".into()));
    }
    let d = SquareClass::from_rational(&BigRational::from_integer(squarefree_class(&n)))?;
    let b = rational_sqrt(&(&n / d.rep_rational())).expect("n / D is a square");
    let cc = CoclassC4::from_abc(d, a, b, c)?;
    Ok(C4Decoded { coclass: cc, sign_ambiguous: true })
}

/// Rational roots of `x^3 - p x^2 - 4 r x + (4 p r - q^2)`, sorted.
fn cubic_resolvent_roots(p: &BigRational, q: &BigRational, r: &BigRational) -> Vec<BigRational> {
    let res = RationalPoly::new(vec![rat(4) * p * r - q * q, rat(-4) * r, -p.clone(), rat(1)]);
    let mut v = rational_roots(&res);
    v.sort();
    v.dedup();
    v
}

fn cubic_resolvent_roots_of(f: &RationalPoly) -> Result<Vec<BigRational>> {
    let (p, q, r) = depress_quartic(f)?;
    Ok(cubic_resolvent_roots(&p, &q, &r))
}

/// Componentwise product, with rational squares pulled out of c.
pub fn c4_add(x: &CoclassC4, y: &CoclassC4) -> Result<CoclassC4> {
    if x.d != y.d {
        return invalid(format!("module classes differ: {} vs {}", x.d, y.d));
    }
    let cc = CoclassC4 { d: x.d.clone(), alpha: x.alpha.mul(&y.alpha), c: &x.c * &y.c };
    Ok(normalize(&cc))
}

/// `(alpha / lambda^4, c / lambda^2)` with `lambda^2 = |c|` when that is a rational square.
pub fn normalize(cc: &CoclassC4) -> CoclassC4 {
    match rational_sqrt(&cc.c.abs()) {
        Some(lam) if !lam.is_one() => {
            let l2 = &lam * &lam;
            let l4 = &l2 * &l2;
            CoclassC4 {
                d: cc.d.clone(),
                alpha: cc.alpha.scale(&(BigRational::one() / l4)),
                c: &cc.c / l2,
            }
        }
        _ => cc.clone(),
    }
}

pub fn c4_neg(x: &CoclassC4) -> CoclassC4 {
    CoclassC4 { d: x.d.clone(), alpha: x.alpha.conj(), c: x.c.clone() }
}

/// A random datum `(c^2 g / conj(g), c)`.
pub fn random_datum<R: rand::Rng>(d: &SquareClass, rng: &mut R) -> CoclassC4 {
    let ring = alpha_ring(d);
    loop {
        let g = QuadElem::new(ring.clone(), rat(rng.gen_range(-6..=6)), rat(rng.gen_range(1..=6)));
        let c = rat(rng.gen_range(1..=4)) * if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
        let Some(gi) = g.conj().inv() else { continue };
        let alpha = g.mul(&gi).scale(&(&c * &c));
        if let Ok(cc) = CoclassC4::new(d.clone(), alpha, c) {
            return cc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::frac;
    use rand::SeedableRng;

    fn cls(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    fn p(s: &str) -> RationalPoly {
        RationalPoly::parse(s).unwrap()
    }

    #[test]
    fn encode_d14_example() {
        let cc = CoclassC4::from_abc(cls(14), frac(-5, 4), frac(1, 2), frac(3, 2)).unwrap();
        assert_eq!(cc.quartic(), p("7,0,-6,0,1"));
        let l = c4_encode(&cc).unwrap();
        assert_eq!(l.factors(), &[p("7,0,-6,0,1")]);
        let dec = c4_decode(&l).unwrap().coclass;
        assert_eq!(dec.d, cls(14));
        assert_eq!(dec.c, frac(3, 2));
        assert_eq!(dec.alpha.x, frac(-5, 4));
        assert_eq!(dec.alpha.y.abs(), frac(1, 2));
    }

    #[test]
    fn degenerate_data() {
        let z = c4_encode(&CoclassC4::zero(cls(14))).unwrap();
        assert_eq!(z.factor_degrees(), vec![1, 1, 2]);
        assert_eq!(separable_representative(&CoclassC4::zero(cls(14))).unwrap().quartic(), p("224,0,-60,0,1"));
        let m = separable_representative(&CoclassC4::mirror_datum(cls(14))).unwrap();
        assert_eq!(m.quartic(), p("2704,0,-120,0,1"));
        for d in [2, 3, 5, 14] {
            let l = c4_encode(&CoclassC4::mirror_datum(cls(d))).unwrap();
            let k = cls(d).quadratic_poly();
            let target = EtaleAlgebra::from_factors(&[k.clone(), k.affine_subst(&rat(1), &rat(7))]).unwrap();
            assert!(l.is_isomorphic(&target).unwrap(), "D = {d}");
            assert_eq!(c4_decode(&l).unwrap().coclass, CoclassC4::mirror_datum(cls(d)));
        }
    }

    #[test]
    fn mirror_translation() {
        let cc = CoclassC4::from_abc(cls(14), frac(-5, 4), frac(1, 2), frac(3, 2)).unwrap();
        let m = c4_add(&cc, &CoclassC4::mirror_datum(cls(14))).unwrap();
        assert_eq!(m.quartic(), p("8,0,-12,0,1"));
        let back = c4_add(&m, &CoclassC4::mirror_datum(cls(14))).unwrap();
        assert!(c4_encode(&back).unwrap().is_isomorphic(&c4_encode(&cc).unwrap()).unwrap());
    }

    #[test]
    fn inverse_pair_is_trivial() {
        let cc = CoclassC4::from_abc(cls(14), frac(-5, 4), frac(1, 2), frac(3, 2)).unwrap();
        let z = c4_add(&cc, &c4_neg(&cc)).unwrap();
        assert!(z.is_degenerate());
        assert_eq!(c4_encode(&z).unwrap().factor_degrees(), vec![1, 1, 2]);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for d in [2, 3, 5, -1, 14, -7] {
            for _ in 0..3 {
                let cc = random_datum(&cls(d), &mut rng);
                let l = c4_encode(&cc).unwrap();
                let dec = c4_decode(&l).unwrap().coclass;
                assert!(c4_encode(&dec).unwrap().is_isomorphic(&l).unwrap(), "D = {d}, {cc:?}");
            }
        }
    }

    #[test]
    fn odd_quartic_decodes() {
        // x^4 + x^3 + x^2 + x + 1 has depressed q != 0
        let l = EtaleAlgebra::from_poly(&p("1,1,1,1,1")).unwrap();
        let dec = c4_decode(&l).unwrap().coclass;
        assert!(c4_encode(&dec).unwrap().is_isomorphic(&l).unwrap());
        let s4 = EtaleAlgebra::from_poly(&p("1,1,0,0,1")).unwrap();
        assert!(c4_decode(&s4).unwrap_err().is_unsupported());
    }
}
