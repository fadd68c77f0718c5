use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RationalPoly;
use crate::error::{invalid, Result};

fn pow(b: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// Resultant by the Euclidean remainder sequence over the rationals.
pub fn resultant(f: &RationalPoly, g: &RationalPoly) -> Result<BigRational> {
    if f.is_zero() || g.is_zero() {
        return invalid("resultant of the zero polynomial");
    }
    Ok(res_rec(f.clone(), g.clone()))
}

fn res_rec(f: RationalPoly, g: RationalPoly) -> BigRational {
    let (m, n) = (f.degree(), g.degree());
    if n == 0 {
        return pow(&g.lead(), m);
    }
    if m == 0 {
        return pow(&f.lead(), n);
    }
    let r = f.rem(&g);
    if r.is_zero() {
        return BigRational::zero();
    }
    let sign = if (m * n) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    let k = m - r.degree();
    sign * pow(&g.lead(), k) * res_rec(g, r)
}

/// `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
pub fn discriminant(f: &RationalPoly) -> Result<BigRational> {
    if f.is_zero() {
        return invalid("discriminant of the zero polynomial");
    }
    let n = f.degree();
    if n == 0 {
        return invalid("discriminant needs degree at least 1");
    }
    if n == 1 {
        return Ok(BigRational::one());
    }
    let r = resultant(f, &f.derivative())?;
    let s = if (n * (n - 1) / 2) % 2 == 1 { -r } else { r };
    Ok(s / f.lead())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::{frac, rat};

    /// Sylvester determinant by fraction-free Gaussian elimination.
    fn sylvester(f: &RationalPoly, g: &RationalPoly) -> BigRational {
        let (m, n) = (f.degree(), g.degree());
        let size = m + n;
        let mut a = vec![vec![BigRational::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                a[i][i + j] = f.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                a[n + i][i + j] = g.coeff(n - j);
            }
        }
        let mut det = BigRational::one();
        for c in 0..size {
            let Some(p) = (c..size).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for r in c + 1..size {
                let k = &a[r][c] / &a[c][c];
                for j in c..size {
                    let t = &k * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
        det
    }

    #[test]
    fn known_values() {
        let f = RationalPoly::from_ints(&[-2, 0, 1]);
        let g = RationalPoly::from_ints(&[-3, 0, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), rat(1));
        assert_eq!(sylvester(&f, &g), rat(1));
        let l = RationalPoly::from_ints(&[-1, 1]);
        assert_eq!(resultant(&l, &l).unwrap(), rat(0));
        assert_eq!(discriminant(&RationalPoly::from_ints(&[7, 0, -6, 0, 1])).unwrap(), rat(7168));
        assert!(resultant(&RationalPoly::zero(), &f).is_err());
    }

    #[test]
    fn depressed_cubic_disc() {
        for t in [frac(1, 2), rat(1), rat(-3), frac(5, 2)] {
            let f = RationalPoly::new(vec![-t.clone(), rat(-3), rat(0), rat(1)]);
            let want = rat(27) * (rat(4) - &t * &t);
            assert_eq!(discriminant(&f).unwrap(), want);
        }
    }

    #[test]
    fn matches_sylvester_on_mixed_degrees() {
        let f = RationalPoly::parse("3,-1/2,0,2,1").unwrap();
        let g = RationalPoly::parse("1,4,-7/3").unwrap();
        assert_eq!(resultant(&f, &g).unwrap(), sylvester(&f, &g));
        assert_eq!(resultant(&g, &f).unwrap(), sylvester(&g, &f));
    }
}
