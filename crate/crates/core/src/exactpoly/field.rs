//! Arithmetic in `Q[t]/(f)` and Trager norms.

use num_rational::BigRational;
use num_traits::Zero;

use super::factor::{factor_rationals, is_irreducible, poly_order};
use super::poly::{rat, RationalPoly};
use super::resultant::resultant;
use super::roots::numeric_roots;
use crate::error::{invalid, Error, Result};

/// The quotient ring `Q[t]/(modulus)`; a field when the modulus is irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    pub modulus: RationalPoly,
}

impl QuotientRing {
    pub fn new(modulus: &RationalPoly) -> Self {
        QuotientRing { modulus: modulus.monic() }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn reduce(&self, a: &RationalPoly) -> RationalPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
        self.reduce(&(a * b))
    }

    /// Inverse, if `a` is a unit.
    pub fn inv(&self, a: &RationalPoly) -> Option<RationalPoly> {
        let (g, s, _) = a.ext_gcd(&self.modulus);
        if g.degree() == 0 && !g.is_zero() {
            Some(self.reduce(&s))
        } else {
            None
        }
    }

    /// Evaluates a rational polynomial at the element `a`.
    pub fn eval(&self, g: &RationalPoly, a: &RationalPoly) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        for c in g.coeffs().iter().rev() {
            acc = &self.mul(&acc, a) + &RationalPoly::constant(c.clone());
        }
        acc
    }

    /// Characteristic polynomial of multiplication by `a`, computed as
    /// `res_t(modulus(t), x - a(t))`.
    pub fn charpoly(&self, a: &RationalPoly) -> RationalPoly {
        let n = self.degree();
        let pts: Vec<BigRational> = (0..=n as i64).map(rat).collect();
        let vals: Vec<BigRational> = pts
            .iter()
            .map(|x0| {
                let h = &RationalPoly::constant(x0.clone()) - a;
                if h.is_zero() {
                    BigRational::zero()
                } else {
                    resultant(&self.modulus, &h).unwrap()
                }
            })
            .collect();
        interpolate(&pts, &vals)
    }
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RationalPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = RationalPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = &(&acc * &RationalPoly::linear_root(xs[i].clone())) + &RationalPoly::constant(dd[i].clone());
    }
    acc
}

/// `res_y(f(y), g(x - k y))` as a polynomial in x; its roots are `beta + k theta`.
pub fn trager_norm(g: &RationalPoly, f: &RationalPoly, k: i64) -> RationalPoly {
    let d = g.degree() * f.degree();
    let kk = rat(k);
    let pts: Vec<BigRational> = (0..=d as i64).map(rat).collect();
    let vals: Vec<BigRational> = pts
        .iter()
        .map(|x0| {
            let h = g.affine_subst(&-kk.clone(), x0);
            if h.is_zero() {
                BigRational::zero()
            } else {
                resultant(f, &h).unwrap()
            }
        })
        .collect();
    interpolate(&pts, &vals)
}

/// Shift sequence 1, -1, 2, -2, ...
fn shifts() -> impl Iterator<Item = i64> {
    (1..).flat_map(|k| [k, -k])
}

/// First shift k for which the Trager norm is squarefree.
pub fn squarefree_norm(g: &RationalPoly, f: &RationalPoly) -> (i64, RationalPoly) {
    for k in shifts().take(64) {
        let n = trager_norm(g, f, k);
        if n.is_squarefree() {
            return (k, n);
        }
    }
    unreachable!("all but finitely many shifts give a squarefree norm")
}

/// Presentation of `Q[x]/(g) (x) Q[y]/(f)` as a product of fields, by factoring
/// a squarefree Trager norm. Both inputs must be squarefree.
pub fn tensor_factors(g: &RationalPoly, f: &RationalPoly) -> Result<Vec<RationalPoly>> {
    if !g.is_squarefree() || !f.is_squarefree() {
        return invalid("tensor product needs squarefree inputs");
    }
    let (_, n) = squarefree_norm(g, f);
    Ok(factor_rationals(&n)?.into_iter().map(|(p, _)| p).collect())
}

/// Degrees of the irreducible factors of g over the field `Q[t]/(f)`.
pub fn factor_degrees_over(g: &RationalPoly, f: &RationalPoly) -> Result<Vec<usize>> {
    check_field(f)?;
    if !g.is_squarefree() {
        return invalid("polynomial must be squarefree");
    }
    let (_, n) = squarefree_norm(g, f);
    let mut ds: Vec<usize> = factor_rationals(&n)?
        .into_iter()
        .map(|(p, _)| p.degree() / f.degree())
        .collect();
    ds.sort();
    Ok(ds)
}

fn check_field(f: &RationalPoly) -> Result<()> {
    if f.degree() == 0 || !is_irreducible(f) {
        return Err(Error::InvalidInput(format!("{} is not irreducible", f.pretty())));
    }
    Ok(())
}

/// Polynomials with coefficients in a number field, ascending.
type KPoly = Vec<RationalPoly>;

fn kp_trim(mut a: KPoly) -> KPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn kp_rem(k: &QuotientRing, a: &KPoly, b: &KPoly) -> KPoly {
    let mut r = a.clone();
    let inv = k.inv(b.last().unwrap()).expect("nonzero element of a field");
    while r.len() >= b.len() {
        let c = k.mul(r.last().unwrap(), &inv);
        let shift = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = k.reduce(&(&r[shift + j] - &k.mul(&c, bj)));
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        r = kp_trim(r);
    }
    r
}

fn kp_gcd(k: &QuotientRing, a: &KPoly, b: &KPoly) -> KPoly {
    let (mut a, mut b) = (kp_trim(a.clone()), kp_trim(b.clone()));
    while !b.is_empty() {
        let r = kp_rem(k, &a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let inv = k.inv(a.last().unwrap()).unwrap();
    a.iter().map(|c| k.mul(c, &inv)).collect()
}

/// `g(x - k t)` as a polynomial in x over `Q[t]/(f)`.
fn shifted_over(k: &QuotientRing, g: &RationalPoly, shift: i64) -> KPoly {
    // Horner with linear polynomial (x - shift*t)
    let lin: KPoly = vec![RationalPoly::monomial(rat(-shift), 1), RationalPoly::one()];
    let mut acc: KPoly = vec![];
    for c in g.coeffs().iter().rev() {
        // acc = acc * lin + c
        let mut next: KPoly = vec![RationalPoly::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, l) in lin.iter().enumerate() {
                next[i + j] = k.reduce(&(&next[i + j] + &k.mul(a, l)));
            }
        }
        next[0] = &next[0] + &RationalPoly::constant(c.clone());
        acc = kp_trim(next);
    }
    acc
}

/// All roots of g in `Q[t]/(f)` as polynomials in t of degree < deg f, sorted.
pub fn roots_in_extension(g: &RationalPoly, f: &RationalPoly) -> Result<Vec<RationalPoly>> {
    check_field(f)?;
    if !g.is_squarefree() {
        return invalid("polynomial must be squarefree");
    }
    let k = QuotientRing::new(f);
    let n = k.degree();
    if n == 1 {
        return Ok(super::factor::rational_roots(g).into_iter().map(RationalPoly::constant).collect());
    }
    let (shift, norm) = squarefree_norm(g, f);
    let factors = factor_rationals(&norm)?;
    let gs = shifted_over(&k, g, shift);
    let mut out = Vec::new();
    for (lin_norm, _) in factors.iter().filter(|(p, _)| p.degree() == n) {
        let nk: KPoly = lin_norm.coeffs().iter().map(|c| RationalPoly::constant(c.clone())).collect();
        let h = kp_gcd(&k, &gs, &nk);
        if h.len() != 2 {
            return Err(Error::InvalidInput("unexpected factor shape over extension".into()));
        }
        // h = x - gamma, gamma = beta + shift * t
        let gamma = -&h[0];
        let beta = k.reduce(&(&gamma - &RationalPoly::monomial(rat(shift), 1)));
        if !k.eval(g, &beta).is_zero() {
            return Err(Error::InvalidInput("root witness failed exact verification".into()));
        }
        out.push(beta);
    }
    out.sort_by(poly_order);
    Ok(out)
}

/// Some root of g in `Q[t]/(f)`, if any.
pub fn root_in_extension(g: &RationalPoly, f: &RationalPoly) -> Result<Option<RationalPoly>> {
    Ok(roots_in_extension(g, f)?.into_iter().next())
}

pub fn has_root_in_extension(g: &RationalPoly, f: &RationalPoly) -> Result<bool> {
    let Some(beta) = root_in_extension(g, f)? else {
        return Ok(false);
    };
    // numeric containment: beta(theta) must land in a root disc of g
    let bits = 128;
    let thetas = numeric_roots(f, 64)?;
    let gs = numeric_roots(g, 64)?;
    let img = thetas[0].eval_poly(&beta, bits);
    if !gs.iter().any(|b| !b.disjoint(&img)) {
        return Err(Error::Precision("numeric confirmation of root witness failed".into()));
    }
    Ok(true)
}
