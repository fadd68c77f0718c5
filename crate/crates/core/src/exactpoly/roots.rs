//! Certified complex root isolation.
//!
//! Approximations come from Aberth iteration (f64, then fixed point at the
//! working precision). Certification is exact: the Weierstrass corrections
//! `W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))` are evaluated over the
//! rationals and the discs `D(z_i, n |W_i|)` are checked to be disjoint.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::RationalPoly;
use crate::error::{invalid, Error, Result};

pub const START_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 8192;

/// A closed disc in the complex plane with dyadic center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

#[derive(Serialize)]
struct BallJson {
    re: f64,
    im: f64,
    radius_log2: f64,
}

impl Serialize for ComplexBall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BallJson { re: self.re_f64(), im: self.im_f64(), radius_log2: self.radius_log2() }.serialize(s)
    }
}

fn two_pow(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << (k as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-k) as usize))
    }
}

/// Dyadic upper bound for sqrt(q), q >= 0, with about `bits` fractional bits.
pub fn sqrt_upper(q: &BigRational, bits: u32) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let s = 2 * bits as usize;
    let scaled = (q.numer() << s) / q.denom();
    let r = scaled.sqrt() + 1u32;
    BigRational::new(r, BigInt::one() << bits as usize)
}

/// Dyadic lower bound for sqrt(q), q >= 0.
pub fn sqrt_lower(q: &BigRational, bits: u32) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let s = 2 * bits as usize;
    let scaled = (q.numer() << s) / q.denom();
    BigRational::new(scaled.sqrt(), BigInt::one() << bits as usize)
}

/// Rounds q to the nearest multiple of 2^-bits (ties toward negative infinity).
pub fn round_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scaled = (q.numer() << bits as usize) * 2 + q.denom();
    let n = num_integer::Integer::div_floor(&scaled, &(q.denom() * 2));
    BigRational::new(n, BigInt::one() << bits as usize)
}

impl ComplexBall {
    pub fn exact(re: BigRational, im: BigRational) -> Self {
        ComplexBall { re, im, radius: BigRational::zero() }
    }

    pub fn real(x: BigRational) -> Self {
        Self::exact(x, BigRational::zero())
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64().unwrap_or(f64::NAN)
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64().unwrap_or(f64::NAN)
    }

    /// log2 of the radius; `-inf` for exact points.
    pub fn radius_log2(&self) -> f64 {
        if self.radius.is_zero() {
            return f64::NEG_INFINITY;
        }
        let n = self.radius.numer().bits() as f64;
        let d = self.radius.denom().bits() as f64;
        let approx = self.radius.numer().to_f64().map(|x| x.log2()).unwrap_or(n)
            - self.radius.denom().to_f64().map(|x| x.log2()).unwrap_or(d);
        if approx.is_finite() {
            approx
        } else {
            n - d
        }
    }

    fn dist2(&self, o: &ComplexBall) -> BigRational {
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        &dr * &dr + &di * &di
    }

    /// True iff the discs do not meet.
    pub fn disjoint(&self, o: &ComplexBall) -> bool {
        let r = &self.radius + &o.radius;
        self.dist2(o) > &r * &r
    }

    /// True iff `o` lies inside this disc.
    pub fn contains(&self, o: &ComplexBall) -> bool {
        if o.radius > self.radius {
            return false;
        }
        let r = &self.radius - &o.radius;
        self.dist2(o) <= &r * &r
    }

    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        self.contains(&ComplexBall::exact(re.clone(), im.clone()))
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: -&self.im, radius: self.radius.clone() }
    }

    fn abs2_mid(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, o: &ComplexBall) -> Self {
        ComplexBall {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            radius: &self.radius + &o.radius,
        }
    }

    pub fn sub(&self, o: &ComplexBall) -> Self {
        ComplexBall {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            radius: &self.radius + &o.radius,
        }
    }

    pub fn mul(&self, o: &ComplexBall) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let a = sqrt_upper(&self.abs2_mid(), 96);
        let b = sqrt_upper(&o.abs2_mid(), 96);
        let radius = &a * &o.radius + &b * &self.radius + &self.radius * &o.radius;
        ComplexBall { re, im, radius }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ComplexBall { re: &self.re * c, im: &self.im * c, radius: &self.radius * c.abs() }
    }

    /// Enclosure of 1/z for every z in the disc; None if the disc meets 0.
    pub fn recip(&self) -> Option<Self> {
        let m2 = self.abs2_mid();
        let lo = sqrt_lower(&m2, 128);
        if lo <= self.radius {
            return None;
        }
        let re = &self.re / &m2;
        let im = -&self.im / &m2;
        let radius = &self.radius / (&lo * (&lo - &self.radius));
        Some(ComplexBall { re, im, radius })
    }

    /// Rounds the center to `bits` fractional bits, enlarging the radius.
    pub fn rounded(&self, bits: u32) -> Self {
        let re = round_dyadic(&self.re, bits);
        let im = round_dyadic(&self.im, bits);
        ComplexBall { re, im, radius: &self.radius + two_pow(-(bits as i64)) }
    }

    /// Horner evaluation of a rational polynomial on the ball.
    pub fn eval_poly(&self, f: &RationalPoly, bits: u32) -> Self {
        let mut acc = ComplexBall::real(BigRational::zero());
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add(&ComplexBall::real(c.clone())).rounded(bits);
        }
        acc
    }

    pub fn cmp_center(&self, o: &ComplexBall) -> Ordering {
        self.re.cmp(&o.re).then(self.im.cmp(&o.im))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// Certified isolating discs for the roots of a squarefree polynomial.
///
/// Every returned radius is at most `2^-precision_bits`; discs are pairwise
/// disjoint, each holds exactly one root, and the list is closed under
/// complex conjugation. Working precision starts at 128 bits and doubles up
/// to 8192 bits before giving up.
pub fn numeric_roots(f: &RationalPoly, precision_bits: u32) -> Result<Vec<ComplexBall>> {
    if f.is_zero() {
        return invalid("roots of the zero polynomial");
    }
    if !f.is_squarefree() {
        return invalid("polynomial is not squarefree; deflate by gcd(f, f') first");
    }
    let n = f.degree();
    if n == 0 {
        return Ok(vec![]);
    }
    let target = two_pow(-(precision_bits as i64));
    let mut start = aberth_f64(f);
    let mut w = START_PRECISION;
    while w <= MAX_PRECISION {
        let approx = aberth_big(f, &start, w);
        if let Some(balls) = certify(f, &approx, w, &target) {
            return Ok(balls);
        }
        start = approx.iter().map(|(a, b)| (fx_to_f64(a, w), fx_to_f64(b, w))).collect();
        w *= 2;
    }
    Err(Error::Precision(format!(
        "root isolation did not certify within {MAX_PRECISION} bits"
    )))
}

fn fx_to_f64(a: &BigInt, w: u32) -> f64 {
    let shift = w.saturating_sub(60) as usize;
    let top = (a >> shift).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - w as i32)
}

fn aberth_f64(f: &RationalPoly) -> Vec<(f64, f64)> {
    let c = f.monic().to_f64_coeffs();
    let n = c.len() - 1;
    // Fujiwara-style radius bound
    let mut rad: f64 = 0.0;
    for (k, ck) in c.iter().enumerate().take(n) {
        let v = ck.abs().powf(1.0 / (n - k) as f64);
        rad = rad.max(v);
    }
    let rad = (2.0 * rad).max(1e-3);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (rad * 0.9 * t.cos(), rad * 0.9 * t.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let (mut p, mut dp) = ((0.0, 0.0), (0.0, 0.0));
            for ck in c.iter().rev() {
                dp = cmul(dp, z[i]);
                dp = (dp.0 + p.0, dp.1 + p.1);
                p = cmul(p, z[i]);
                p.0 += ck;
            }
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    let inv = cdiv((1.0, 0.0), d);
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let rs = cmul(ratio, s);
            let denom = (1.0 - rs.0, -rs.1);
            let step = cdiv(ratio, denom);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                moved = moved.max(step.0.abs() + step.1.abs());
            }
        }
        if moved < 1e-15 * rad {
            break;
        }
    }
    z
}

type Fx = (BigInt, BigInt);

fn fx_from_f64(x: f64, w: u32) -> BigInt {
    if !x.is_finite() {
        return BigInt::zero();
    }
    let m = (x * 2f64.powi(52)).round();
    let b = BigInt::from(m as i128);
    if w >= 52 {
        b << (w - 52) as usize
    } else {
        b >> (52 - w) as usize
    }
}

fn aberth_big(f: &RationalPoly, start: &[(f64, f64)], w: u32) -> Vec<Fx> {
    let n = f.degree();
    let wu = w as usize;
    let coeffs: Vec<BigInt> = f
        .monic()
        .coeffs()
        .iter()
        .map(|c| (c.numer() << wu) / c.denom())
        .collect();
    let mul = |a: &Fx, b: &Fx| -> Fx { ((&a.0 * &b.0 - &a.1 * &b.1) >> wu, (&a.0 * &b.1 + &a.1 * &b.0) >> wu) };
    let div = |a: &Fx, b: &Fx| -> Option<Fx> {
        let d = &b.0 * &b.0 + &b.1 * &b.1;
        if d.is_zero() {
            return None;
        }
        Some((((&a.0 * &b.0 + &a.1 * &b.1) << wu) / &d, ((&a.1 * &b.0 - &a.0 * &b.1) << wu) / &d))
    };
    let one: Fx = (BigInt::one() << wu, BigInt::zero());
    let mut z: Vec<Fx> = start.iter().map(|&(a, b)| (fx_from_f64(a, w), fx_from_f64(b, w))).collect();
    let tol = BigInt::one() << 8usize;
    for _ in 0..(2 * (w as usize / 32) + 40) {
        let mut done = true;
        for i in 0..n {
            let (mut p, mut dp): (Fx, Fx) = ((BigInt::zero(), BigInt::zero()), (BigInt::zero(), BigInt::zero()));
            for ck in coeffs.iter().rev() {
                dp = mul(&dp, &z[i]);
                dp = (&dp.0 + &p.0, &dp.1 + &p.1);
                p = mul(&p, &z[i]);
                p.0 += ck;
            }
            if p.0.is_zero() && p.1.is_zero() {
                continue;
            }
            let Some(ratio) = div(&p, &dp) else { continue };
            let mut s: Fx = (BigInt::zero(), BigInt::zero());
            for j in 0..n {
                if j != i {
                    let d = (&z[i].0 - &z[j].0, &z[i].1 - &z[j].1);
                    if let Some(inv) = div(&one, &d) {
                        s = (&s.0 + &inv.0, &s.1 + &inv.1);
                    }
                }
            }
            let rs = mul(&ratio, &s);
            let denom = (&one.0 - &rs.0, -&rs.1);
            let Some(step) = div(&ratio, &denom) else { continue };
            if step.0.abs() > tol || step.1.abs() > tol {
                done = false;
            }
            z[i] = (&z[i].0 - &step.0, &z[i].1 - &step.1);
        }
        if done {
            break;
        }
    }
    z
}

fn certify(f: &RationalPoly, approx: &[Fx], w: u32, target: &BigRational) -> Option<Vec<ComplexBall>> {
    let n = f.degree();
    let den = BigInt::one() << w as usize;
    let mids: Vec<(BigRational, BigRational)> = approx
        .iter()
        .map(|(a, b)| (BigRational::new(a.clone(), den.clone()), BigRational::new(b.clone(), den.clone())))
        .collect();
    let lc2 = f.lead() * f.lead();
    let nn = BigRational::from_integer(BigInt::from(2 * n));
    let mut balls = Vec::with_capacity(n);
    for i in 0..n {
        let (fr, fi) = eval_exact(f, &mids[i]);
        let num = &fr * &fr + &fi * &fi;
        let mut den2 = lc2.clone();
        for j in 0..n {
            if j != i {
                let dr = &mids[i].0 - &mids[j].0;
                let di = &mids[i].1 - &mids[j].1;
                den2 *= &dr * &dr + &di * &di;
            }
        }
        if den2.is_zero() {
            return None;
        }
        let w_abs = sqrt_upper(&(num / den2), w + 32);
        balls.push(ComplexBall { re: mids[i].0.clone(), im: mids[i].1.clone(), radius: &nn * w_abs });
    }
    if !pairwise_disjoint(&balls) {
        return None;
    }
    // A disc meeting the real axis holds a real root; recenter it there.
    for b in balls.iter_mut() {
        if b.im.abs() <= b.radius {
            b.radius = &b.radius + b.im.abs();
            b.im = BigRational::zero();
        }
    }
    // Make the non-real discs exact conjugate pairs.
    let mut upper: Vec<ComplexBall> = balls.iter().filter(|b| b.im.is_positive()).cloned().collect();
    let lower: Vec<ComplexBall> = balls.iter().filter(|b| b.im.is_negative()).cloned().collect();
    if upper.len() != lower.len() {
        return None;
    }
    let mut out: Vec<ComplexBall> = balls.iter().filter(|b| b.im.is_zero()).cloned().collect();
    for u in upper.iter_mut() {
        let partner = lower.iter().find(|l| !l.conj().disjoint(u))?;
        let d = sqrt_upper(&u.conj().dist2(partner), w + 32);
        let r = (&u.radius).max(&partner.radius).clone() + d;
        u.radius = r;
        out.push(u.clone());
        out.push(u.conj());
    }
    if !pairwise_disjoint(&out) || out.iter().any(|b| &b.radius > target) {
        return None;
    }
    out.sort_by(|a, b| a.cmp_center(b));
    Some(out)
}

fn pairwise_disjoint(balls: &[ComplexBall]) -> bool {
    (0..balls.len()).all(|i| (i + 1..balls.len()).all(|j| balls[i].disjoint(&balls[j])))
}

fn eval_exact(f: &RationalPoly, z: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
    for c in f.coeffs().iter().rev() {
        let nr = &re * &z.0 - &im * &z.1 + c;
        let ni = &re * &z.1 + &im * &z.0;
        re = nr;
        im = ni;
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_and_minus_i() {
        let f = RationalPoly::from_ints(&[1, 0, 1]);
        let r = numeric_roots(&f, 128).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].contains_point(&BigRational::zero(), &-BigRational::one()));
        assert!(r[1].contains_point(&BigRational::zero(), &BigRational::one()));
        assert!(r.iter().all(|b| b.radius <= two_pow(-128)));
    }

    #[test]
    fn rejects_repeated_roots() {
        let f = RationalPoly::from_ints(&[1, 2, 1]);
        assert!(numeric_roots(&f, 64).is_err());
    }

    #[test]
    fn nested_radicals() {
        // roots of x^4 - 6x^2 + 7 are +-sqrt(3 +- sqrt 2)
        let f = RationalPoly::from_ints(&[7, 0, -6, 0, 1]);
        let r = numeric_roots(&f, 100).unwrap();
        assert_eq!(r.len(), 4);
        let mut got: Vec<f64> = r.iter().map(|b| b.re_f64()).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s = 2f64.sqrt();
        let want = [-(3.0 + s).sqrt(), -(3.0 - s).sqrt(), (3.0 - s).sqrt(), (3.0 + s).sqrt()];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
        assert!(r.iter().all(|b| b.is_real()));
    }

    #[test]
    fn high_precision_request() {
        let f = RationalPoly::from_ints(&[-2, 0, 0, 1]);
        let r = numeric_roots(&f, 1000).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|b| b.radius <= two_pow(-1000)));
    }

    #[test]
    fn ball_arithmetic_encloses() {
        let a = ComplexBall { re: BigRational::one(), im: BigRational::one(), radius: two_pow(-20) };
        let b = a.mul(&a);
        // (1+i)^2 = 2i
        assert!(b.contains_point(&BigRational::zero(), &BigRational::from_integer(2.into())));
        let inv = a.recip().unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert!(inv.contains_point(&half, &-half.clone()));
    }
}
