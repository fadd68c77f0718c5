//! Integer factorization for square-class and valuation bookkeeping.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRational;

const SMALL_PRIMES_BOUND: u32 = 1 << 12;

fn small_primes() -> Vec<u32> {
    let n = SMALL_PRIMES_BOUND as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24).
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent; returns a nontrivial factor of an odd composite.
fn pollard_brent(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y, mut g) = (BigUint::from(2u32), BigUint::from(2u32), BigUint::one());
        let mut steps = 0u64;
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
            steps += 1;
            if steps > 1 << 22 {
                break;
            }
        }
        if !g.is_one() && &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn factor_rec(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        factor_rec(r.clone(), out);
        factor_rec(r, out);
        return;
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    factor_rec(d, out);
    factor_rec(e, out);
}

/// Prime factorization of a positive integer, sorted by prime.
pub fn factor_integer(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut m = n.clone();
    for p in small_primes() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    let mut big = Vec::new();
    factor_rec(m, &mut big);
    big.sort();
    for p in big {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// The squarefree integer with the same sign and square class as `n != 0`.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mag = n.magnitude();
    let mut acc = BigUint::one();
    for (p, e) in factor_integer(mag) {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    let s = if n.sign() == Sign::Minus { -BigInt::one() } else { BigInt::one() };
    s * BigInt::from(acc)
}

/// Squarefree integer representative of the square class of a nonzero rational.
pub fn squarefree_class(q: &BigRational) -> BigInt {
    squarefree_part(&(q.numer() * q.denom()))
}

/// `v_p(n)` for `n != 0`.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `v_p(q)` for `q != 0`.
pub fn valuation(q: &BigRational, p: u64) -> i64 {
    valuation_int(q.numer(), p) as i64 - valuation_int(q.denom(), p) as i64
}

/// Primes dividing the numerator or denominator.
pub fn support(q: &BigRational) -> Vec<u64> {
    let mut ps: Vec<u64> = factor_integer(q.numer().magnitude())
        .into_iter()
        .chain(factor_integer(q.denom().magnitude()))
        .filter_map(|(p, _)| p.to_u64())
        .collect();
    ps.sort();
    ps.dedup();
    ps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small_and_large() {
        let n = BigUint::from(2u32).pow(5) * BigUint::from(3u32).pow(2) * BigUint::from(1_000_003u64);
        let f = factor_integer(&n);
        assert_eq!(f, vec![
            (BigUint::from(2u32), 5),
            (BigUint::from(3u32), 2),
            (BigUint::from(1_000_003u32), 1)
        ]);
        let a = BigUint::from(1_000_000_007u64);
        let b = BigUint::from(998_244_353u64);
        let f = factor_integer(&(&a * &b * &b));
        assert_eq!(f, vec![(b, 2), (a, 1)]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(-108)), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(7168)), BigInt::from(7));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
        let q = BigRational::new(BigInt::from(7), BigInt::from(2));
        assert_eq!(squarefree_class(&q), BigInt::from(14));
    }

    #[test]
    fn valuations() {
        let q = BigRational::new(BigInt::from(50), BigInt::from(3));
        assert_eq!(valuation(&q, 5), 2);
        assert_eq!(valuation(&q, 3), -1);
        assert_eq!(support(&q), vec![2, 3, 5]);
    }
}
