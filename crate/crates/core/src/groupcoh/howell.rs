//! Submodules of `(Z/m)^n` in Howell normal form.
//!
//! The Howell form gives canonical coset representatives, which is what makes
//! kernel extraction and quotient enumeration work over a ring that is not a
//! field.

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug)]
pub struct Howell {
    pub m: u64,
    pub ncols: usize,
    /// (pivot column, row); the pivot entry divides m.
    pub rows: Vec<(usize, Vec<u64>)>,
}

fn lin(m: u64, a: i128, x: &[u64], b: i128, y: &[u64]) -> Vec<u64> {
    let mi = m as i128;
    x.iter()
        .zip(y)
        .map(|(&p, &q)| ((a * p as i128 + b * q as i128).rem_euclid(mi)) as u64)
        .collect()
}

fn scale(m: u64, k: u64, x: &[u64]) -> Vec<u64> {
    x.iter().map(|&v| ((v as u128 * k as u128) % m as u128) as u64).collect()
}

fn unit_normalizer(a: u64, m: u64) -> u64 {
    let g = gcd(a, m);
    let mm = m / g;
    if mm == 1 {
        return 1;
    }
    let (_, inv, _) = egcd((a / g) as i128, mm as i128);
    let w0 = inv.rem_euclid(mm as i128) as u64;
    let mut w = w0;
    while gcd(w, m) != 1 {
        w += mm;
    }
    w
}

impl Howell {
    pub fn new(m: u64, ncols: usize, gens: Vec<Vec<u64>>) -> Self {
        let mut work: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|v| v.into_iter().map(|x| x % m).collect::<Vec<_>>())
            .filter(|v: &Vec<u64>| v.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
        for c in 0..ncols {
            let (with, mut without): (Vec<Vec<u64>>, Vec<Vec<u64>>) = work.into_iter().partition(|v| v[c] != 0);
            let mut it = with.into_iter();
            let Some(mut piv) = it.next() else {
                work = without;
                continue;
            };
            for r in it {
                let (a, b) = (piv[c] as i128, r[c] as i128);
                let (g, s, t) = egcd(a, b);
                let (u, v) = (a / g, b / g);
                let np = lin(m, s, &piv, t, &r);
                let nr = lin(m, -v, &piv, u, &r);
                if nr.iter().any(|&x| x != 0) {
                    without.push(nr);
                }
                piv = np;
            }
            if piv[c] == 0 {
                if piv.iter().any(|&x| x != 0) {
                    without.push(piv);
                }
                work = without;
                continue;
            }
            let w = unit_normalizer(piv[c], m);
            piv = scale(m, w, &piv);
            let p = piv[c];
            let extra = scale(m, m / p, &piv);
            if extra.iter().any(|&x| x != 0) {
                without.push(extra);
            }
            rows.push((c, piv));
            work = without;
        }
        // reduce entries above each pivot
        for j in 0..rows.len() {
            for i in j + 1..rows.len() {
                let (c, ref ri) = rows[i];
                let p = ri[c];
                let q = rows[j].1[c] / p;
                if q != 0 {
                    let ri = ri.clone();
                    rows[j].1 = lin(m, 1, &rows[j].1, -(q as i128), &ri);
                }
            }
        }
        Howell { m, ncols, rows }
    }

    /// Canonical representative of `v + span`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = v.iter().map(|&x| x % self.m).collect();
        for (c, r) in &self.rows {
            let q = v[*c] / r[*c];
            if q != 0 {
                v = lin(self.m, 1, &v, -(q as i128), r);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Size of the submodule, as log2 for safety and exactly when small.
    pub fn order(&self) -> u128 {
        self.rows
            .iter()
            .map(|(c, r)| (self.m / r[*c]) as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// `{x : A x = 0}` over `Z/m`, for A given by its rows of length n.
pub fn kernel(m: u64, n: usize, a_rows: &[Vec<u64>]) -> Howell {
    let sparse: Vec<Vec<(usize, u64)>> = a_rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &v)| v % m != 0).map(|(i, &v)| (i, v % m)).collect())
        .collect();
    Howell::new(m, n, kernel_sparse(m, n, &sparse))
}

/// Generators of `{x : A x = 0}` for a sparse A, one constraint at a time.
pub fn kernel_sparse(m: u64, n: usize, rows: &[Vec<(usize, u64)>]) -> Vec<Vec<u64>> {
    let mut gens: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1 % m;
            v
        })
        .collect();
    let mi = m as u128;
    for row in rows {
        let vals: Vec<u64> = gens
            .iter()
            .map(|g| (row.iter().map(|&(c, a)| a as u128 * g[c] as u128 % mi).sum::<u128>() % mi) as u64)
            .collect();
        let active: Vec<usize> = (0..gens.len()).filter(|&i| vals[i] != 0).collect();
        let Some((&first, rest)) = active.split_first() else { continue };
        let mut piv = gens[first].clone();
        let mut pv = vals[first];
        for &i in rest {
            let (a, b) = (pv as i128, vals[i] as i128);
            let (g, s, t) = egcd(a, b);
            let (u, v) = (a / g, b / g);
            let np = lin(m, s, &piv, t, &gens[i]);
            gens[i] = lin(m, -v, &piv, u, &gens[i]);
            piv = np;
            pv = ((s * a + t * b).rem_euclid(m as i128)) as u64;
        }
        let d = gcd(pv, m);
        let fixed = scale(m, m / d, &piv);
        gens[first] = fixed;
        gens.retain(|g| g.iter().any(|&x| x != 0));
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_span_of_two() {
        let h = Howell::new(4, 2, vec![vec![2, 1]]);
        // span{(2,1)} = {(0,0),(2,1),(0,2),(2,3)}
        assert_eq!(h.order(), 4);
        assert!(h.contains(&[0, 2]));
        assert!(!h.contains(&[2, 0]));
    }

    #[test]
    fn kernel_mod_6() {
        // 2x + 3y = 0 mod 6
        let k = kernel(6, 2, &[vec![2, 3]]);
        let mut count = 0;
        for x in 0..6 {
            for y in 0..6 {
                let inside = (2 * x + 3 * y) % 6 == 0;
                assert_eq!(k.contains(&[x, y]), inside);
                count += inside as u128;
            }
        }
        assert_eq!(k.order(), count);
    }

    #[test]
    fn canonical_cosets() {
        let h = Howell::new(8, 3, vec![vec![2, 4, 6], vec![0, 4, 4]]);
        let mut reps = std::collections::BTreeSet::new();
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    reps.insert(h.reduce(&[a, b, c]));
                }
            }
        }
        assert_eq!(reps.len() as u128 * h.order(), 512);
    }
}
