use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::json;

use super::howell::{kernel_sparse, Howell};
use super::module::{Cochain, FiniteGModule};
use crate::error::{invalid, unsupported, Result};

pub const MAX_GROUP_ORDER: usize = 24;
pub const MAX_MODULE_ORDER: usize = 16;
pub const MAX_DEGREE: usize = 2;
pub const MAX_CLASSES: usize = 4096;

/// Inhomogeneous coboundary of an n-cochain.
pub fn coboundary(gm: &FiniteGModule, s: &Cochain) -> Cochain {
    let n = s.arity;
    let ord = gm.order();
    let m = &gm.module;
    Cochain::from_fn(gm, n + 1, |t| {
        let mut acc = gm.act(t[0], s.at(ord, &t[1..]));
        let mut u = Vec::with_capacity(n);
        for i in 0..n {
            u.clear();
            u.extend_from_slice(&t[..i]);
            u.push(gm.mul(t[i], t[i + 1]));
            u.extend_from_slice(&t[i + 2..]);
            let v = s.at(ord, &u);
            acc = if i % 2 == 0 { m.sub(&acc, v) } else { m.add(&acc, v) };
        }
        let last = s.at(ord, &t[..n]);
        if n % 2 == 0 {
            m.sub(&acc, last)
        } else {
            m.add(&acc, last)
        }
    })
}

pub fn is_cocycle(gm: &FiniteGModule, s: &Cochain) -> bool {
    coboundary(gm, s).is_zero()
}

/// Coordinates of normalized cochains as integer lifts in `(Z/m)^L`.
#[derive(Clone, Debug)]
struct Layout {
    ord: usize,
    e: usize,
    pos: Vec<Option<usize>>,
    ne: Vec<usize>,
    r: usize,
    orders: Vec<u64>,
    m: u64,
    /// `act[g][j][k]`: coordinate j of `g . e_k`.
    act: Vec<Vec<Vec<u64>>>,
}

impl Layout {
    fn new(gm: &FiniteGModule) -> Self {
        let ord = gm.order();
        let e = gm.identity();
        let ne: Vec<usize> = (0..ord).filter(|&g| g != e).collect();
        let mut pos = vec![None; ord];
        for (i, &g) in ne.iter().enumerate() {
            pos[g] = Some(i);
        }
        let module = &gm.module;
        let r = module.rank();
        let act = (0..ord)
            .map(|g| {
                let cols: Vec<Vec<u32>> = (0..r).map(|k| gm.act(g, &module.unit_vector(k))).collect();
                (0..r).map(|j| (0..r).map(|k| cols[k][j] as u64).collect()).collect()
            })
            .collect();
        Layout {
            ord,
            e,
            pos,
            ne,
            r,
            orders: module.cyclic_orders.iter().map(|&n| n as u64).collect(),
            m: module.exponent().max(1) as u64,
            act,
        }
    }

    fn ntuples(&self, n: usize) -> usize {
        (self.ord - 1).pow(n as u32)
    }

    fn len(&self, n: usize) -> usize {
        self.ntuples(n) * self.r
    }

    fn var(&self, t: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &g in t {
            idx = idx * (self.ord - 1) + self.pos[g]?;
        }
        Some(idx)
    }

    fn tuple(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let b = self.ord - 1;
        let mut t = vec![0; n];
        for k in (0..n).rev() {
            t[k] = self.ne[idx % b];
            idx /= b;
        }
        t
    }

    /// Sparse matrix of the coboundary on normalized n-cochains, row `o*r + j`.
    fn boundary_rows(&self, gm: &FiniteGModule, n: usize) -> Vec<Vec<(usize, u64)>> {
        let (r, m) = (self.r, self.m);
        let neg = |v: u64| (m - v % m) % m;
        let mut rows = Vec::with_capacity(self.len(n + 1));
        for o in 0..self.ntuples(n + 1) {
            let t = self.tuple(n + 1, o);
            for j in 0..r {
                let mut entries: BTreeMap<usize, u64> = BTreeMap::new();
                let mut put = |col: usize, v: u64| {
                    let e = entries.entry(col).or_insert(0);
                    *e = (*e + v) % m;
                };
                if let Some(v) = self.var(&t[1..]) {
                    for k in 0..r {
                        put(v * r + k, self.act[t[0]][j][k]);
                    }
                }
                let mut u = Vec::with_capacity(n);
                for i in 0..n {
                    let p = gm.mul(t[i], t[i + 1]);
                    if p == self.e {
                        continue;
                    }
                    u.clear();
                    u.extend_from_slice(&t[..i]);
                    u.push(p);
                    u.extend_from_slice(&t[i + 2..]);
                    let v = self.var(&u).expect("normalized tuple");
                    put(v * r + j, if i % 2 == 0 { neg(1) } else { 1 });
                }
                let v = self.var(&t[..n]).expect("normalized tuple");
                put(v * r + j, if n % 2 == 0 { neg(1) } else { 1 });
                rows.push(entries.into_iter().filter(|&(_, v)| v != 0).collect());
            }
        }
        rows
    }

    fn relations(&self, n: usize) -> Vec<Vec<u64>> {
        let len = self.len(n);
        let mut out = Vec::new();
        for t in 0..self.ntuples(n) {
            for (j, &nj) in self.orders.iter().enumerate() {
                if nj < self.m {
                    let mut v = vec![0; len];
                    v[t * self.r + j] = nj;
                    out.push(v);
                }
            }
        }
        out
    }

    fn key_of(&self, n: usize, c: &Cochain) -> Vec<u64> {
        let mut v = vec![0; self.len(n)];
        for idx in 0..self.ntuples(n) {
            let t = self.tuple(n, idx);
            let val = c.at(self.ord, &t);
            for j in 0..self.r {
                v[idx * self.r + j] = val[j] as u64;
            }
        }
        v
    }

    fn cochain_of(&self, gm: &FiniteGModule, n: usize, key: &[u64]) -> Cochain {
        Cochain::from_fn(gm, n, |t| match self.var(t) {
            Some(idx) => (0..self.r).map(|j| (key[idx * self.r + j] % self.orders[j]) as u32).collect(),
            None => gm.module.zero(),
        })
    }
}

/// The classes of `H^n(G, M)` with canonical representatives.
#[derive(Clone, Debug)]
pub struct CoclassSet {
    pub degree: usize,
    /// One normalized cocycle per class; the zero class comes first.
    pub representatives: Vec<Cochain>,
    keys: BTreeMap<Vec<u64>, usize>,
    boundaries: Howell,
    layout: Layout,
}

fn check_caps(gm: &FiniteGModule, n: usize) -> Result<()> {
    if gm.order() > MAX_GROUP_ORDER {
        return unsupported(format!("group order {} exceeds {MAX_GROUP_ORDER}", gm.order()));
    }
    if gm.module.order() > MAX_MODULE_ORDER {
        return unsupported(format!("module order {} exceeds {MAX_MODULE_ORDER}", gm.module.order()));
    }
    if n > MAX_DEGREE {
        return unsupported(format!("degree {n} exceeds {MAX_DEGREE}"));
    }
    Ok(())
}

/// `H^n(G, M)` by linear algebra over `Z/exp(M)` on normalized cochains.
pub fn cohomology(gm: &FiniteGModule, n: usize) -> Result<CoclassSet> {
    check_caps(gm, n)?;
    let lay = Layout::new(gm);
    let (m, r, len) = (lay.m, lay.r, lay.len(n));

    let mut cons = lay.boundary_rows(gm, n);
    for (i, row) in cons.iter_mut().enumerate() {
        let s = m / lay.orders[i % r];
        for e in row.iter_mut() {
            e.1 = e.1 * s % m;
        }
        row.retain(|e| e.1 != 0);
    }
    let cycles = kernel_sparse(m, len, &cons);

    let mut bgens = lay.relations(n);
    if n > 0 {
        let rows = lay.boundary_rows(gm, n - 1);
        let mut cols = vec![vec![0u64; len]; lay.len(n - 1)];
        for (ri, row) in rows.iter().enumerate() {
            for &(c, v) in row {
                cols[c][ri] = (cols[c][ri] + v) % m;
            }
        }
        bgens.extend(cols);
    }
    let boundaries = Howell::new(m, len, bgens);

    let steps: BTreeSet<Vec<u64>> = cycles
        .iter()
        .map(|z| boundaries.reduce(z))
        .filter(|z| z.iter().any(|&x| x != 0))
        .collect();
    let zero = vec![0u64; len];
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(k) = queue.pop_front() {
        for s in &steps {
            let next: Vec<u64> = k.iter().zip(s).map(|(a, b)| (a + b) % m).collect();
            let next = boundaries.reduce(&next);
            if seen.insert(next.clone()) {
                if seen.len() > MAX_CLASSES {
                    return unsupported(format!("more than {MAX_CLASSES} classes"));
                }
                queue.push_back(next);
            }
        }
    }
    let representatives = seen.iter().map(|k| lay.cochain_of(gm, n, k)).collect();
    let keys = seen.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    Ok(CoclassSet { degree: n, representatives, keys, boundaries, layout: lay })
}

impl CoclassSet {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    /// Index of the class of a cocycle of matching degree.
    pub fn class_of(&self, gm: &FiniteGModule, c: &Cochain) -> Result<usize> {
        if c.arity != self.degree {
            return invalid(format!("expected a {}-cochain", self.degree));
        }
        if !is_cocycle(gm, c) {
            return invalid("not a cocycle");
        }
        let c = normalize(gm, c);
        let key = self.boundaries.reduce(&self.layout.key_of(self.degree, &c));
        self.keys
            .get(&key)
            .copied()
            .ok_or_else(|| crate::Error::InvalidInput("class not found".into()))
    }

    pub fn is_coboundary(&self, gm: &FiniteGModule, c: &Cochain) -> Result<bool> {
        Ok(self.class_of(gm, c)? == 0)
    }

    pub fn to_json(&self, gm: &FiniteGModule) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "order": self.order(),
            "representatives": self.representatives.iter().map(|c| c.to_json(gm)).collect::<Vec<_>>(),
        })
    }
}

/// Cohomologous normalized cocycle: vanishes whenever an argument is 1.
pub fn normalize(gm: &FiniteGModule, c: &Cochain) -> Cochain {
    if c.arity != 2 {
        return c.clone();
    }
    let e = gm.identity();
    let v = c.at(gm.order(), &[e, e]).clone();
    let shift = Cochain::from_fn(gm, 1, |_| v.clone());
    c.add(&gm.module, &coboundary(gm, &shift).neg(&gm.module))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstruct::{FiniteAbelian, PermGroup};

    fn c2_on(m: FiniteAbelian, invert: bool) -> FiniteGModule {
        let g = PermGroup::cyclic(2);
        if invert {
            FiniteGModule::via_sign(g, m, |p| !p.is_identity())
        } else {
            FiniteGModule::trivial_action(g, m)
        }
    }

    fn s3_sign(m: FiniteAbelian) -> FiniteGModule {
        FiniteGModule::via_sign(PermGroup::symmetric(3).unwrap(), m, |p| p.sign() < 0)
    }

    /// Counts classes by brute force over all cochains.
    fn brute_order(gm: &FiniteGModule, n: usize) -> usize {
        let mo = gm.module.order();
        let size = gm.order().pow(n as u32);
        let all = |k: usize| {
            let mut out = Vec::new();
            let total = mo.pow(k as u32);
            for mut code in 0..total {
                let mut table = Vec::with_capacity(k);
                for _ in 0..k {
                    table.push(gm.module.element(code % mo));
                    code /= mo;
                }
                out.push(table);
            }
            out
        };
        let z: BTreeSet<Vec<Vec<u32>>> = all(size)
            .into_iter()
            .filter(|t| is_cocycle(gm, &Cochain { arity: n, table: t.clone() }))
            .collect();
        let b: BTreeSet<Vec<Vec<u32>>> = if n == 0 {
            BTreeSet::from([vec![gm.module.zero()]])
        } else {
            all(gm.order().pow(n as u32 - 1))
                .into_iter()
                .map(|t| coboundary(gm, &Cochain { arity: n - 1, table: t }).table)
                .collect()
        };
        z.len() / b.len()
    }

    #[test]
    fn small_groups_match_brute_force() {
        let cases = vec![
            (c2_on(FiniteAbelian::cyclic(2), false), 1),
            (c2_on(FiniteAbelian::cyclic(2), false), 2),
            (c2_on(FiniteAbelian::cyclic(4), true), 1),
            (c2_on(FiniteAbelian::cyclic(4), true), 0),
            (c2_on(FiniteAbelian::cyclic(3), true), 1),
            (c2_on(FiniteAbelian::cyclic(4), false), 2),
            (s3_sign(FiniteAbelian::cyclic(3)), 1),
            (s3_sign(FiniteAbelian::cyclic(3)), 0),
        ];
        for (gm, n) in cases {
            assert_eq!(cohomology(&gm, n).unwrap().order(), brute_order(&gm, n), "{} H^{n}", gm.describe());
        }
    }

    #[test]
    fn known_orders() {
        assert_eq!(cohomology(&c2_on(FiniteAbelian::cyclic(2), false), 1).unwrap().order(), 2);
        assert_eq!(cohomology(&s3_sign(FiniteAbelian::cyclic(3)), 1).unwrap().order(), 3);
        // H^2(C2, Z/4 trivial) = Z/4 / 2Z/4
        assert_eq!(cohomology(&c2_on(FiniteAbelian::cyclic(4), false), 2).unwrap().order(), 2);
        // H^2(C2 x C2, F2) has order 8
        let v4 = PermGroup::generate(4, vec![
            crate::permstruct::Perm::parse_cycles(4, "(0 1)(2 3)").unwrap(),
            crate::permstruct::Perm::parse_cycles(4, "(0 2)(1 3)").unwrap(),
        ])
        .unwrap();
        let gm = FiniteGModule::trivial_action(v4, FiniteAbelian::cyclic(2));
        assert_eq!(cohomology(&gm, 2).unwrap().order(), 8);
        // H^1(S3, F2 trivial) = Hom(S3, F2)
        let gm = FiniteGModule::trivial_action(PermGroup::symmetric(3).unwrap(), FiniteAbelian::cyclic(2));
        assert_eq!(cohomology(&gm, 1).unwrap().order(), 2);
    }

    #[test]
    fn mixed_exponent_module() {
        let m = FiniteAbelian::new(vec![2, 4]).unwrap();
        for n in 0..=2 {
            let gm = c2_on(m.clone(), true);
            assert_eq!(cohomology(&gm, n).unwrap().order(), brute_order(&gm, n), "n={n}");
        }
    }

    #[test]
    fn double_coboundary_vanishes() {
        let gm = s3_sign(FiniteAbelian::cyclic(3));
        let c = Cochain::from_fn(&gm, 2, |t| vec![(t[0] * 5 + t[1] * 7) as u32 % 3]);
        assert!(coboundary(&gm, &coboundary(&gm, &c)).is_zero());
    }

    #[test]
    fn class_of_representatives() {
        let gm = s3_sign(FiniteAbelian::cyclic(3));
        let h = cohomology(&gm, 1).unwrap();
        for (i, z) in h.representatives.iter().enumerate() {
            assert_eq!(h.class_of(&gm, z).unwrap(), i);
            let shift = Cochain::from_fn(&gm, 0, |_| vec![1]);
            let w = z.add(&gm.module, &coboundary(&gm, &shift));
            assert_eq!(h.class_of(&gm, &w).unwrap(), i);
        }
    }

    #[test]
    fn caps_are_enforced() {
        let gm = FiniteGModule::trivial_action(PermGroup::symmetric(5).unwrap(), FiniteAbelian::cyclic(2));
        assert!(cohomology(&gm, 1).unwrap_err().is_unsupported());
    }
}
