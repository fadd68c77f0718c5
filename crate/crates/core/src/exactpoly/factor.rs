//! Factorization over the rationals: squarefree split, Cantor-Zassenhaus
//! modulo a small prime, Hensel lifting, Zassenhaus recombination.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::RationalPoly;
use super::zmod::{self, Zp};
use crate::error::{invalid, Result};

type ZPoly = Vec<BigInt>;

/// Largest degree accepted by [`factor_rationals`].
pub const MAX_FACTOR_DEGREE: usize = 64;

const PRIME_CANDIDATES: usize = 6;

/// Deterministic order on polynomials: degree first, then coefficients from the top.
pub fn poly_order(a: &RationalPoly, b: &RationalPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for k in (0..=a.degree()).rev() {
            let o = a.coeff(k).cmp(&b.coeff(k));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Monic irreducible factors with multiplicities.
pub fn factor_rationals(f: &RationalPoly) -> Result<Vec<(RationalPoly, usize)>> {
    if f.is_zero() || f.degree() == 0 {
        return invalid("factorization needs a polynomial of degree at least 1");
    }
    if f.degree() > MAX_FACTOR_DEGREE {
        return invalid(format!("degree {} exceeds factorization cap {MAX_FACTOR_DEGREE}", f.degree()));
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree_integer(&part.primitive_integer()) {
            out.push((RationalPoly::from_bigints(&g).monic(), mult));
        }
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// True iff f is irreducible over the rationals.
pub fn is_irreducible(f: &RationalPoly) -> bool {
    match factor_rationals(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

fn zpoly_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zpoly_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zpoly_trim(v)
}

/// Exact division by a monic integer polynomial; None if a remainder is left.
fn zpoly_div_monic(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        None
    } else {
        Some(zpoly_trim(q))
    }
}

fn to_zp(a: &ZPoly, p: u64) -> Zp {
    let pb = BigInt::from(p);
    zmod::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_zp(a: &Zp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn symmetric_int(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if r > (m >> 1) {
        r - m
    } else {
        r
    }
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    zpoly_trim(a.iter().map(|c| symmetric_int(c, m)).collect())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest-ish k with `k^(n-i) f_i / l` integral for all i, where l is the
/// leading coefficient. Primes of l below a trial bound are handled exactly;
/// anything left over falls back to k = l.
fn monic_scale(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let l = f[n].clone();
    let mut rest = l.clone();
    let mut k = BigInt::one();
    let mut q = 2u32;
    while q < 10_000 && !rest.is_one() {
        let qb = BigInt::from(q);
        let mut vl = 0i64;
        while (&rest % &qb).is_zero() {
            rest /= &qb;
            vl += 1;
        }
        if vl > 0 {
            let mut e = 0i64;
            for (i, c) in f[..n].iter().enumerate() {
                let mut vc = 0i64;
                let mut c = c.clone();
                while !c.is_zero() && vc < vl && (&c % &qb).is_zero() {
                    c /= &qb;
                    vc += 1;
                }
                if c.is_zero() {
                    continue;
                }
                let gap = vl - vc;
                let m = (n - i) as i64;
                e = e.max((gap + m - 1) / m);
            }
            k *= qb.pow(e as u32);
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        return l;
    }
    k
}

/// Factors a primitive squarefree integer polynomial (positive leading coefficient).
fn factor_squarefree_integer(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let l = f[n].clone();
    let k = monic_scale(f);
    // monic transform: k^n f(x / k) / l
    let mut ft: ZPoly = vec![BigInt::zero(); n + 1];
    let mut kp = BigInt::one();
    for i in (0..n).rev() {
        kp *= &k;
        ft[i] = &f[i] * &kp / &l;
    }
    ft[n] = BigInt::one();
    let monic_factors = factor_monic(&ft);
    let mut out: Vec<ZPoly> = monic_factors
        .into_iter()
        .map(|g| {
            let mut kp = BigInt::one();
            let scaled: ZPoly = g
                .iter()
                .map(|c| {
                    let v = c * &kp;
                    kp *= &k;
                    v
                })
                .collect();
            RationalPoly::from_bigints(&scaled).primitive_integer()
        })
        .collect();
    out.sort();
    out
}

fn factor_monic(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Zp>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < PRIME_CANDIDATES {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let fp = to_zp(f, p);
        if zmod::deg(&fp) != n as isize {
            continue;
        }
        if zmod::deg(&zmod::gcd(&fp, &zmod::derivative(&fp, p), p)) > 0 {
            continue;
        }
        tried += 1;
        let fs = zmod::factor_squarefree(&fp, p, &mut rng);
        if fs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
    }
    let (p, local) = best.expect("a good prime always exists for squarefree input");

    // Mignotte: any monic factor has coefficients at most 2^n * ||f||_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2u32 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(f, &local, p, k);
    recombine(f, lifted, &modulus)
}

fn hensel_multi(f: &ZPoly, local: &[Zp], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if local.len() == 1 {
        return vec![symmetric(f, &pk)];
    }
    let mid = local.len() / 2;
    let g0 = local[..mid].iter().fold(vec![1u64], |a, b| zmod::mul(&a, b, p));
    let h0 = local[mid..].iter().fold(vec![1u64], |a, b| zmod::mul(&a, b, p));
    let (g, h) = hensel_pair(f, &g0, &h0, p, k);
    let mut out = hensel_multi(&g, &local[..mid], p, k);
    out.extend(hensel_multi(&h, &local[mid..], p, k));
    out
}

/// Lifts f = g0 h0 (mod p) with monic coprime factors to f = g h (mod p^k).
fn hensel_pair(f: &ZPoly, g0: &Zp, h0: &Zp, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = zmod::ext_gcd(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = from_zp(g0);
    let mut h = from_zp(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zpoly_mul(&g, &h);
        let n = f.len().max(gh.len());
        let diff: ZPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                (a - b) / &pj
            })
            .collect();
        let e = to_zp(&diff, p);
        let (q, tau_g) = zmod::div_rem(&zmod::mul(&e, &t, p), g0, p);
        let tau_h = zmod::add(&zmod::mul(&e, &s, p), &zmod::mul(&q, h0, p), p);
        for (i, c) in tau_g.iter().enumerate() {
            g[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in tau_h.iter().enumerate() {
            if i < h.len() {
                h[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    (symmetric(&g, &pj), symmetric(&h, &pj))
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            // cheap filter: the constant term of a true factor divides that of f
            let c0 = idx.iter().fold(BigInt::one(), |acc, &i| symmetric_int(&(acc * &remaining[i][0]), modulus));
            let plausible = c0.is_zero() || current[0].is_zero() || (&current[0] % &c0).is_zero();
            let divided = plausible
                .then(|| {
                    let cand = idx
                        .iter()
                        .fold(vec![BigInt::one()], |acc, &i| symmetric(&zpoly_mul(&acc, &remaining[i]), modulus));
                    zpoly_div_monic(&current, &cand).map(|q| (cand, q))
                })
                .flatten();
            if let Some((cand, q)) = divided {
                out.push(cand);
                current = q;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
                continue 'outer;
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

/// Rational roots of f, sorted ascending.
pub fn rational_roots(f: &RationalPoly) -> Vec<BigRational> {
    if f.degree() == 0 {
        return vec![];
    }
    let mut roots: Vec<BigRational> = match factor_rationals(f) {
        Ok(fs) => fs
            .into_iter()
            .filter(|(g, _)| g.degree() == 1)
            .map(|(g, _)| -g.coeff(0))
            .collect(),
        Err(_) => vec![],
    };
    roots.sort();
    roots
}

/// Integer square root test for rationals.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Exact integer cube root if it exists.
pub fn rational_cbrt(q: &BigRational) -> Option<BigRational> {
    let neg = q.is_negative();
    let a = q.abs();
    let n = a.numer().cbrt();
    let d = a.denom().cbrt();
    if &(&n * &n * &n) == a.numer() && &(&d * &d * &d) == a.denom() {
        let r = BigRational::new(n, d);
        Some(if neg { -r } else { r })
    } else {
        None
    }
}
