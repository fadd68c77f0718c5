use num_traits::{One, Zero};
use serde::Serialize;

use super::quad::QuadElem;
use super::tate_dual_twist;
use crate::error::{invalid, Result};
use crate::etalealg::{EtaleAlgebra, SquareClass};
use crate::exactpoly::{numeric_roots, rat, rational_sqrt, BigRational, ComplexBall, RationalPoly};

/// A class in `H^1(Q, M)` for an order-3 module with quadratic algebra `T = Q[sqrt D]`,
/// as a norm-one element of `T' = Q[sqrt(-3D)]` modulo cubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoclassC3 {
    pub d: SquareClass,
    pub delta: QuadElem,
}

impl CoclassC3 {
    pub fn new(d: SquareClass, delta: QuadElem) -> Result<Self> {
        if delta.disc != tate_dual_twist(&d) {
            return invalid(format!("delta must lie in Q[sqrt({})]", tate_dual_twist(&d)));
        }
        if !delta.norm().is_one() {
            return invalid(format!("delta has norm {}, expected 1", delta.norm()));
        }
        Ok(CoclassC3 { d, delta })
    }

    pub fn zero(d: SquareClass) -> Self {
        let t = tate_dual_twist(&d);
        CoclassC3 { d, delta: QuadElem::one(t) }
    }

    pub fn is_degenerate(&self) -> bool {
        self.delta.is_rational()
    }

    /// `x^3 - 3x - tr(delta)`.
    pub fn cubic(&self) -> RationalPoly {
        RationalPoly::new(vec![-self.delta.trace(), rat(-3), rat(0), rat(1)])
    }
}

/// The cubic algebra of a class; `delta = +-1` gives `Q x T`.
pub fn c3_encode(cc: &CoclassC3) -> Result<EtaleAlgebra> {
    CoclassC3::new(cc.d.clone(), cc.delta.clone())?;
    if cc.is_degenerate() {
        return EtaleAlgebra::from_factors(&[RationalPoly::x(), cc.d.quadratic_poly()]);
    }
    EtaleAlgebra::from_poly(&cc.cubic())
}

/// Decoded class plus whether it is only determined up to sign.
#[derive(Clone, Debug, Serialize)]
pub struct C3Decoded {
    pub coclass: CoclassC3,
    pub sign_ambiguous: bool,
}

/// Recovers a class from a cubic algebra by Cardano's formula.
pub fn c3_decode(l: &EtaleAlgebra) -> Result<C3Decoded> {
    if l.degree() != 3 {
        return invalid(format!("expected a cubic algebra, got degree {}", l.degree()));
    }
    let d = l.disc_class();
    if !l.is_field() {
        return Ok(C3Decoded { coclass: CoclassC3::zero(d), sign_ambiguous: false });
    }
    let twist = tate_dual_twist(&d);
    let f = l.factors()[0].monic();
    let shift = -f.coeff(2) / rat(3);
    let g = f.affine_subst(&rat(1), &shift);
    let (p, q) = (g.coeff(1), g.coeff(0));
    let delta = if p.is_zero() {
        // pure cube root: T' is split and delta = (u, 1/u)
        let u = -q;
        QuadElem::split(u.clone(), BigRational::one() / u)
    } else {
        let s = &q * &q / rat(4) + &p * &p * &p / rat(27);
        let m = rational_sqrt(&(&s / twist.rep_rational())).expect("twist matches the discriminant class");
        let a = QuadElem::new(twist.clone(), -&q / rat(2), m);
        match rational_sqrt(&(-&p / rat(3))) {
            Some(lam) => a.scale(&(BigRational::one() / (&lam * &lam * &lam))),
            None => a.conj().mul(&a.inv().expect("A is a unit")),
        }
    };
    Ok(C3Decoded { coclass: CoclassC3::new(d, delta)?, sign_ambiguous: true })
}

pub fn c3_add(a: &CoclassC3, b: &CoclassC3) -> Result<CoclassC3> {
    if a.d != b.d {
        return invalid(format!("module classes differ: {} vs {}", a.d, b.d));
    }
    CoclassC3::new(a.d.clone(), a.delta.mul(&b.delta))
}

pub fn c3_neg(a: &CoclassC3) -> CoclassC3 {
    CoclassC3 { d: a.d.clone(), delta: a.delta.conj() }
}

/// The three complex cube roots of delta under the embedding of `QuadElem::to_ball`.
pub fn cube_roots(delta: &QuadElem, bits: u32) -> Result<Vec<ComplexBall>> {
    if delta.is_rational() {
        return invalid("delta must be irrational");
    }
    let t = delta.trace();
    let sextic = RationalPoly::new(vec![rat(1), rat(0), rat(0), -t, rat(0), rat(0), rat(1)]);
    let target = delta.to_ball(bits + 16);
    let mut roots: Vec<(BigRational, ComplexBall)> = numeric_roots(&sextic, bits)?
        .into_iter()
        .map(|z| {
            let c = z.mul(&z).mul(&z);
            let dr = &c.re - &target.re;
            let di = &c.im - &target.im;
            (&dr * &dr + &di * &di, z)
        })
        .collect();
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots.into_iter().take(3).map(|(_, z)| z).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SumCheck {
    pub matched: bool,
    pub max_radius_log2: f64,
}

/// Checks that every root of `c3_encode(a + b)` is among the nine values
/// `w + 1/w` with `w = u v`, u and v cube roots of the two deltas.
pub fn c3_sum_check(a: &CoclassC3, b: &CoclassC3, bits: u32) -> Result<SumCheck> {
    let sum = c3_add(a, b)?;
    if sum.is_degenerate() {
        return invalid("sum is the degenerate class");
    }
    let us = cube_roots(&a.delta, bits)?;
    let vs = cube_roots(&b.delta, bits)?;
    let mut vals = Vec::new();
    for u in &us {
        for v in &vs {
            let w = u.mul(v).rounded(bits + 8);
            let r = w.recip().ok_or_else(|| crate::Error::Precision("cube root ball contains 0".into()))?;
            vals.push(w.add(&r).rounded(bits + 8));
        }
    }
    let roots = numeric_roots(&sum.cubic(), bits)?;
    let mut worst = f64::NEG_INFINITY;
    let mut matched = true;
    for r in &roots {
        worst = worst.max(r.radius_log2());
        match vals.iter().find(|v| !v.disjoint(r)) {
            Some(v) => worst = worst.max(v.radius_log2()),
            None => matched = false,
        }
    }
    Ok(SumCheck { matched, max_radius_log2: worst })
}

/// A random norm-one element `g / conj(g)` with small coordinates.
pub fn random_norm_one<R: rand::Rng>(disc: &SquareClass, rng: &mut R) -> QuadElem {
    loop {
        let g = QuadElem::new(disc.clone(), rat(rng.gen_range(-9..=9)), rat(rng.gen_range(1..=9)));
        if g.norm().is_zero() {
            continue;
        }
        let delta = g.mul(&g.conj().inv().unwrap());
        if !delta.is_rational() {
            return delta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etalealg::quadratic_resolvent;
    use crate::exactpoly::frac;
    use rand::SeedableRng;

    fn cls(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    #[test]
    fn zero_class_is_q_times_t() {
        let a = c3_encode(&CoclassC3::zero(cls(5))).unwrap();
        assert_eq!(a.factor_degrees(), vec![1, 2]);
        assert_eq!(c3_encode(&CoclassC3::zero(cls(1))).unwrap().factor_degrees(), vec![1, 1, 1]);
        let minus_one = CoclassC3::new(cls(5), QuadElem::rational(cls(-15), rat(-1))).unwrap();
        assert_eq!(c3_encode(&minus_one).unwrap().factor_degrees(), vec![1, 2]);
    }

    #[test]
    fn encode_example_d5() {
        let cc = CoclassC3::new(cls(5), QuadElem::new(cls(-15), frac(1, 4), frac(1, 4))).unwrap();
        assert_eq!(cc.cubic(), RationalPoly::new(vec![frac(-1, 2), rat(-3), rat(0), rat(1)]));
        let l = c3_encode(&cc).unwrap();
        assert_eq!(quadratic_resolvent(&l).unwrap(), cls(5));
        let dec = c3_decode(&l).unwrap();
        assert_eq!(dec.coclass, cc);
        assert!(dec.sign_ambiguous);
        // tr(d^2) = tr(d)^2 - 2 N(d)
        let twice = c3_add(&cc, &cc).unwrap();
        assert_eq!(twice.delta.trace(), frac(1, 4) - rat(2));
        assert_eq!(twice.cubic(), RationalPoly::new(vec![frac(7, 4), rat(-3), rat(0), rat(1)]));
    }

    #[test]
    fn split_branch_is_pure_cube_root() {
        let cc = CoclassC3::new(cls(-3), QuadElem::split(rat(2), frac(1, 2))).unwrap();
        let l = c3_encode(&cc).unwrap();
        assert_eq!(cc.cubic(), RationalPoly::new(vec![frac(-5, 2), rat(-3), rat(0), rat(1)]));
        let pure = EtaleAlgebra::from_poly(&RationalPoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        assert!(l.is_isomorphic(&pure).unwrap());
        let dec = c3_decode(&pure).unwrap();
        assert_eq!(dec.coclass.d, cls(-3));
        assert!(c3_encode(&dec.coclass).unwrap().is_isomorphic(&pure).unwrap());
    }

    #[test]
    fn inverse_sums_to_zero() {
        let cc = CoclassC3::new(cls(5), QuadElem::new(cls(-15), frac(1, 4), frac(1, 4))).unwrap();
        let z = c3_add(&cc, &c3_neg(&cc)).unwrap();
        assert!(z.delta.is_one());
        assert!(c3_add(&cc, &CoclassC3::zero(cls(7))).is_err());
    }

    #[test]
    fn decode_general_cubic() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for d in [2, -1, 5, -3, 1, 7] {
            let dc = cls(d);
            for _ in 0..4 {
                let cc = CoclassC3::new(dc.clone(), random_norm_one(&tate_dual_twist(&dc), &mut rng)).unwrap();
                let l = c3_encode(&cc).unwrap();
                let back = c3_encode(&c3_decode(&l).unwrap().coclass).unwrap();
                assert!(back.is_isomorphic(&l).unwrap(), "D = {d}");
            }
        }
        // x^3 + x + 1: p is not -3 times a square
        let l = EtaleAlgebra::from_poly(&RationalPoly::from_ints(&[1, 1, 0, 1])).unwrap();
        let back = c3_encode(&c3_decode(&l).unwrap().coclass).unwrap();
        assert!(back.is_isomorphic(&l).unwrap());
    }

    #[test]
    fn sum_check_example() {
        let cc = CoclassC3::new(cls(5), QuadElem::new(cls(-15), frac(1, 4), frac(1, 4))).unwrap();
        let r = c3_sum_check(&cc, &cc, 160).unwrap();
        assert!(r.matched);
        assert!(r.max_radius_log2 <= -64.0);
    }
}
