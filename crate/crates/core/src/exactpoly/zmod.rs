//! Dense polynomials over a prime field `F_p` with `p < 2^31`.

use num_bigint::BigUint;
use rand::Rng;

pub type Zp = Vec<u64>;

pub fn trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn deg(a: &Zp) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn sub(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

pub fn mul(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

pub fn scale(a: &Zp, c: u64, p: u64) -> Zp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn monic(a: &Zp, p: u64) -> Zp {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub fn div_rem(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    assert!(!b.is_empty(), "division by zero in F_p[x]");
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut r = a.clone();
    let inv = inv_mod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &Zp, b: &Zp, p: u64) -> Zp {
    div_rem(a, b, p).1
}

pub fn gcd(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns (g, s, t) with s a + t b = g monic.
pub fn ext_gcd(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp, Zp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().unwrap_or(&1), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &Zp, p: u64) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

pub fn pow_rem(base: &Zp, e: &BigUint, m: &Zp, p: u64) -> Zp {
    let mut r: Zp = rem(&vec![1], m, p);
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &Zp, p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Zp = vec![0, 1];
    let pe = BigUint::from(p);
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while deg(&f) >= 2 * (d as isize + 1) {
        d += 1;
        h = pow_rem(&h, &pe, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if deg(&f) > 0 {
        let n = deg(&f) as usize;
        out.push((f, n));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of degree-d irreducibles, p odd.
pub fn equal_degree<R: Rng>(f: &Zp, d: usize, p: u64, rng: &mut R) -> Vec<Zp> {
    let n = deg(f) as usize;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Zp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let b = pow_rem(&a, &e, f, p);
        let g = gcd(&sub(&b, &vec![1], p), f, p);
        if deg(&g) > 0 && deg(&g) < n as isize {
            let h = div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial, sorted.
pub fn factor_squarefree<R: Rng>(f: &Zp, p: u64, rng: &mut R) -> Vec<Zp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}
