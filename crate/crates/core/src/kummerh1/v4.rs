use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::etalealg::{cubic_resolvent, depress_quartic, EtaleAlgebra};
use crate::exactpoly::{product, rat, BigRational, QuotientRing, RationalPoly};

/// A class in `H^1(Q, C2 x C2)` for the module with cubic algebra R, as a
/// norm-one element of R modulo squares. `delta[i]` lives in `Q[y]/(R.factors[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoclassV4 {
    pub r: EtaleAlgebra,
    pub delta: Vec<RationalPoly>,
}

fn rings(r: &EtaleAlgebra) -> Vec<QuotientRing> {
    r.factors().iter().map(QuotientRing::new).collect()
}

impl CoclassV4 {
    pub fn new(r: EtaleAlgebra, delta: Vec<RationalPoly>) -> Result<Self> {
        if r.degree() != 3 {
            return invalid(format!("R must be cubic, got degree {}", r.degree()));
        }
        if delta.len() != r.factors().len() {
            return invalid("one coordinate per factor of R is required");
        }
        let ks = rings(&r);
        let delta: Vec<RationalPoly> = delta.iter().zip(&ks).map(|(d, k)| k.reduce(d)).collect();
        let cc = CoclassV4 { r, delta };
        if !cc.norm().is_one() {
            return invalid(format!("delta has norm {}, expected 1", cc.norm()));
        }
        Ok(cc)
    }

    pub fn zero(r: EtaleAlgebra) -> Self {
        let n = r.factors().len();
        CoclassV4 { r, delta: vec![RationalPoly::one(); n] }
    }

    /// Characteristic polynomial of multiplication by delta on R.
    pub fn charpoly(&self) -> RationalPoly {
        let ks = rings(&self.r);
        product(&self.delta.iter().zip(&ks).map(|(d, k)| k.charpoly(d)).collect::<Vec<_>>())
    }

    pub fn norm(&self) -> BigRational {
        -self.charpoly().coeff(0)
    }

    fn mul(&self, other: &[RationalPoly]) -> Vec<RationalPoly> {
        let ks = rings(&self.r);
        self.delta.iter().zip(other).zip(&ks).map(|((a, b), k)| k.mul(a, b)).collect()
    }

    /// `x^4 - 2 e1 x^2 - 8 s x + (e1^2 - 4 e2)` with `s^2 = N(delta)`.
    pub fn quartic_with(&self, delta: &[RationalPoly], s: &BigRational) -> RationalPoly {
        let cc = CoclassV4 { r: self.r.clone(), delta: delta.to_vec() };
        let cp = cc.charpoly();
        let e1 = -cp.coeff(2);
        let e2 = cp.coeff(1);
        RationalPoly::new(vec![&e1 * &e1 - rat(4) * e2, rat(-8) * s, rat(-2) * e1, rat(0), rat(1)])
    }

    pub fn quartic(&self) -> RationalPoly {
        self.quartic_with(&self.delta, &rat(1))
    }
}

/// Small elements of `Q[y]/(phi)` in a fixed order.
fn small_elements(deg: usize) -> Vec<RationalPoly> {
    let mut out = Vec::new();
    for a in 1..=4i64 {
        out.push(RationalPoly::constant(rat(a)));
    }
    if deg > 1 {
        for b in [1i64, -1, 2] {
            for a in -2..=2i64 {
                out.push(RationalPoly::from_ints(&[a, b]));
            }
        }
    }
    out
}

/// The quartic algebra of a class. When the generator polynomial has repeated
/// roots, delta is moved within its square class until it is separable.
pub fn v4_encode(cc: &CoclassV4) -> Result<EtaleAlgebra> {
    CoclassV4::new(cc.r.clone(), cc.delta.clone())?;
    let f = cc.quartic();
    if f.is_squarefree() {
        return EtaleAlgebra::from_poly(&f);
    }
    let ks = rings(&cc.r);
    let choices: Vec<Vec<RationalPoly>> = cc.r.factors().iter().map(|p| small_elements(p.degree())).collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let beta: Vec<RationalPoly> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let nb: BigRational = beta.iter().zip(&ks).map(|(b, k)| -k.charpoly(b).coeff(0) * sign(k.degree())).product();
        if !nb.is_zero() {
            let sq: Vec<RationalPoly> = beta.iter().zip(&ks).map(|(b, k)| k.mul(b, b)).collect();
            let g = cc.quartic_with(&cc.mul(&sq), &nb);
            if g.is_squarefree() {
                return EtaleAlgebra::from_poly(&g);
            }
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return Err(Error::Unsupported("no separable representative found in the bounded search".into()));
        }
    }
}

/// `(-1)^deg`, so that `-charpoly(0) * sign` is the norm.
fn sign(deg: usize) -> BigRational {
    if deg % 2 == 1 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Recovers a class from a quartic: R is the cubic resolvent and delta is the
/// norm-one element `-z^3/q^2` with `z = p - y` in `R = Q[y]/(res)`.
pub fn v4_decode(f: &RationalPoly) -> Result<CoclassV4> {
    if f.degree() != 4 {
        return invalid(format!("expected a quartic, got degree {}", f.degree()));
    }
    if !f.is_squarefree() {
        return Err(Error::NotEtale(format!("{} has a repeated factor", f.pretty())));
    }
    let g = with_nonzero_q(f)?;
    let (p, q, _) = depress_quartic(&g)?;
    let r = cubic_resolvent(&g)?;
    let ks = rings(&r);
    let scale = -BigRational::one() / (&q * &q);
    let delta = ks
        .iter()
        .map(|k| {
            let z = k.reduce(&(&RationalPoly::constant(p.clone()) - &RationalPoly::x()));
            k.mul(&k.mul(&z, &z), &z).scale(&scale)
        })
        .collect();
    CoclassV4::new(r, delta)
}

/// f itself when its depressed form has `q != 0`, else a Tschirnhaus transform
/// generating the same algebra.
fn with_nonzero_q(f: &RationalPoly) -> Result<RationalPoly> {
    if !depress_quartic(f)?.1.is_zero() {
        return Ok(f.clone());
    }
    let k = QuotientRing::new(f);
    for c in 1..=16i64 {
        let g = k.charpoly(&RationalPoly::from_ints(&[0, c, 1]));
        if g.is_squarefree() && !depress_quartic(&g)?.1.is_zero() {
            return Ok(g);
        }
    }
    Err(Error::Unsupported("no Tschirnhaus transform with q != 0 found".into()))
}

pub fn v4_add(a: &CoclassV4, b: &CoclassV4) -> Result<CoclassV4> {
    if a.r != b.r {
        return invalid("cubic algebras differ");
    }
    CoclassV4::new(a.r.clone(), a.mul(&b.delta))
}

/// A random norm-one element `g^3 / N(g)` of R.
pub fn random_norm_one<Rg: rand::Rng>(r: &EtaleAlgebra, rng: &mut Rg) -> Vec<RationalPoly> {
    let ks = rings(r);
    loop {
        let g: Vec<RationalPoly> = ks
            .iter()
            .map(|k| {
                let cs: Vec<i64> = (0..k.degree()).map(|_| rng.gen_range(-5..=5)).collect();
                k.reduce(&RationalPoly::from_ints(&cs))
            })
            .collect();
        let n: BigRational = g.iter().zip(&ks).map(|(x, k)| -k.charpoly(x).coeff(0) * sign(k.degree())).product();
        if n.is_zero() {
            continue;
        }
        let inv = BigRational::one() / n;
        return g.iter().zip(&ks).map(|(x, k)| k.mul(&k.mul(x, x), x).scale(&inv)).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etalealg::galois_group;
    use crate::exactpoly::frac;
    use rand::SeedableRng;

    fn p(s: &str) -> RationalPoly {
        RationalPoly::parse(s).unwrap()
    }

    #[test]
    fn trivial_class_splits() {
        let cc = CoclassV4::zero(EtaleAlgebra::split(3));
        assert_eq!(cc.quartic(), p("-3,-8,-6,0,1"));
        assert_eq!(v4_encode(&cc).unwrap().factor_degrees(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn encode_example() {
        let d = vec![RationalPoly::constant(rat(2)), RationalPoly::constant(rat(3)), RationalPoly::constant(frac(1, 6))];
        let cc = CoclassV4::new(EtaleAlgebra::split(3), d).unwrap();
        let f = cc.quartic();
        assert_eq!(f, RationalPoly::new(vec![frac(-23, 36), rat(-8), frac(-31, 3), rat(0), rat(1)]));
        let l = v4_encode(&cc).unwrap();
        assert_eq!(galois_group(&l).unwrap().label, "V4");
        let field = EtaleAlgebra::from_poly(&p("1,0,-10,0,1")).unwrap();
        assert!(l.is_isomorphic(&field).unwrap());
        let back = v4_decode(&f).unwrap();
        assert!(v4_encode(&back).unwrap().is_isomorphic(&l).unwrap());
    }

    #[test]
    fn resolvent_is_r() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for rs in ["-1,-4,0,1", "-17,1,0,1", "0,-1,0,1", "-2,0,0,1"] {
            let r = EtaleAlgebra::from_poly(&p(rs)).unwrap();
            for _ in 0..3 {
                let cc = CoclassV4::new(r.clone(), random_norm_one(&r, &mut rng)).unwrap();
                let l = v4_encode(&cc).unwrap();
                let res = cubic_resolvent(&l.presentation()).unwrap();
                assert!(res.is_isomorphic(&r).unwrap(), "R = {rs}");
                assert_eq!(res.disc_class(), l.disc_class());
            }
        }
    }

    #[test]
    fn decode_round_trips() {
        for fs in ["1,1,0,0,1", "7,0,-6,0,1", "1,1,1,1,1", "2,0,0,0,1"] {
            let f = p(fs);
            let cc = v4_decode(&f).unwrap();
            assert!(cc.norm().is_one());
            let l = EtaleAlgebra::from_poly(&f).unwrap();
            assert!(v4_encode(&cc).unwrap().is_isomorphic(&l).unwrap(), "{fs}");
        }
        assert_eq!(v4_decode(&p("1,1,0,0,1")).unwrap().r.factors()[0], p("-1,-4,0,1"));
    }

    #[test]
    fn rejects_bad_norm() {
        let d = vec![RationalPoly::constant(rat(2)); 3];
        assert!(CoclassV4::new(EtaleAlgebra::split(3), d).is_err());
    }
}
