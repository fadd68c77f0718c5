use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermGroup};
use crate::error::{invalid, Result};

/// Product of cyclic groups `Z/n1 x .. x Z/nk`; elements are residue tuples.
///
/// Elements are indexed in lexicographic order of their tuples, first
/// coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelian {
    pub cyclic_orders: Vec<u32>,
}

pub type Elem = Vec<u32>;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteAbelian {
    pub fn new(cyclic_orders: Vec<u32>) -> Result<Self> {
        if cyclic_orders.iter().any(|&n| n < 2) {
            return invalid("cyclic factor orders must be at least 2");
        }
        Ok(FiniteAbelian { cyclic_orders })
    }

    pub fn cyclic(n: u32) -> Self {
        if n <= 1 {
            return FiniteAbelian { cyclic_orders: vec![] };
        }
        FiniteAbelian { cyclic_orders: vec![n] }
    }

    pub fn trivial() -> Self {
        FiniteAbelian { cyclic_orders: vec![] }
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().map(|&n| n as usize).product()
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    /// lcm of the cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.cyclic_orders
            .iter()
            .fold(1u64, |acc, &n| acc / gcd(acc, n as u64) * n as u64) as u32
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .zip(&self.cyclic_orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().zip(&self.cyclic_orders).map(|(x, n)| (n - x) % n).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn scalar(&self, k: i64, a: &Elem) -> Elem {
        a.iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| ((k.rem_euclid(n as i64) as u64 * x as u64) % n as u64) as u32)
            .collect()
    }

    pub fn element(&self, index: usize) -> Elem {
        let mut out = vec![0; self.rank()];
        let mut r = index;
        for (k, &n) in self.cyclic_orders.iter().enumerate().rev() {
            out[k] = (r % n as usize) as u32;
            r /= n as usize;
        }
        out
    }

    pub fn index(&self, a: &Elem) -> usize {
        a.iter().zip(&self.cyclic_orders).fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn elements(&self) -> Vec<Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn unit_vector(&self, k: usize) -> Elem {
        let mut e = self.zero();
        e[k] = 1;
        e
    }

    pub fn elem_order(&self, a: &Elem) -> u32 {
        a.iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &n)| n / gcd(x as u64, n as u64) as u32)
            .fold(1u64, |acc, o| acc / gcd(acc, o as u64) * o as u64) as u32
    }

    /// Permutation of element indices given by a map on elements.
    pub fn perm_of(&self, f: impl Fn(&Elem) -> Elem) -> Perm {
        Perm::from_images_unchecked(self.elements().iter().map(|e| self.index(&f(e))).collect())
    }

    /// Translation by t as a permutation of the element indices.
    pub fn translation(&self, t: &Elem) -> Perm {
        self.perm_of(|x| self.add(x, t))
    }

    /// Extends images of the unit vectors additively; None if not well defined.
    pub fn hom_from_images(&self, target: &FiniteAbelian, imgs: &[Elem]) -> Option<Vec<Elem>> {
        for (k, &n) in self.cyclic_orders.iter().enumerate() {
            if target.scalar(n as i64, &imgs[k]) != target.zero() {
                return None;
            }
        }
        Some(
            self.elements()
                .iter()
                .map(|e| {
                    let mut acc = target.zero();
                    for (k, &c) in e.iter().enumerate() {
                        acc = target.add(&acc, &target.scalar(c as i64, &imgs[k]));
                    }
                    acc
                })
                .collect(),
        )
    }

    /// All automorphisms, as permutations of element indices, sorted.
    pub fn automorphisms(&self) -> Vec<Perm> {
        let els = self.elements();
        let r = self.rank();
        let mut out = Vec::new();
        let mut choice = vec![0usize; r];
        loop {
            let imgs: Vec<Elem> = choice.iter().map(|&i| els[i].clone()).collect();
            if let Some(table) = self.hom_from_images(self, &imgs) {
                let idx: Vec<usize> = table.iter().map(|e| self.index(e)).collect();
                let mut seen = vec![false; idx.len()];
                if idx.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                    out.push(Perm::from_images_unchecked(idx));
                }
            }
            let mut k = 0;
            loop {
                if k == r {
                    out.sort();
                    return out;
                }
                choice[k] += 1;
                if choice[k] < els.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    pub fn aut_group(&self) -> PermGroup {
        PermGroup::from_closed_elements(self.order(), self.automorphisms())
    }

    pub fn label(&self) -> String {
        if self.cyclic_orders.is_empty() {
            return "C1".into();
        }
        self.cyclic_orders.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x")
    }
}

/// The holomorph `M ⋊ Aut M` acting on the points of M by `x -> a x + t`.
#[derive(Clone, Debug)]
pub struct HolomorphGroup {
    pub module: FiniteAbelian,
    pub group: PermGroup,
    /// Generators of the translation subgroup.
    pub m_part: Vec<Perm>,
    /// Generators of the automorphism subgroup (fixing 0).
    pub aut_part: Vec<Perm>,
}

impl HolomorphGroup {
    /// `lambda_{a,t}(x) = a(x) + t` with `a` an automorphism as a permutation of indices.
    pub fn lambda(&self, a: &Perm, t: &Elem) -> Perm {
        affine(&self.module, a, t)
    }

    /// Splits an element as `(a, t)` with `t` the image of 0.
    pub fn decompose(&self, g: &Perm) -> (Perm, Elem) {
        decompose(&self.module, g)
    }
}

pub(crate) fn affine(m: &FiniteAbelian, a: &Perm, t: &Elem) -> Perm {
    let ti = m.translation(t);
    a.then(&ti)
}

pub(crate) fn decompose(m: &FiniteAbelian, g: &Perm) -> (Perm, Elem) {
    let t = m.element(g.apply(0));
    let a = g.then(&m.translation(&m.neg(&t)));
    (a, t)
}

pub fn holomorph(m: &FiniteAbelian) -> HolomorphGroup {
    let n = m.order();
    let m_part: Vec<Perm> = (0..m.rank()).map(|k| m.translation(&m.unit_vector(k))).collect();
    let auts = m.aut_group();
    let aut_part = auts.generators().to_vec();
    let mut gens = m_part.clone();
    gens.extend(aut_part.iter().cloned());
    let group = PermGroup::generate(n, gens).expect("degrees agree");
    HolomorphGroup { module: m.clone(), group, m_part, aut_part }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_small_holomorphs() {
        assert_eq!(holomorph(&FiniteAbelian::cyclic(3)).group.order(), 6);
        assert_eq!(holomorph(&FiniteAbelian::new(vec![2, 2]).unwrap()).group.order(), 24);
        assert_eq!(holomorph(&FiniteAbelian::cyclic(4)).group.order(), 8);
        assert_eq!(holomorph(&FiniteAbelian::cyclic(5)).group.order(), 20);
    }

    #[test]
    fn affine_law() {
        // lambda_{a,t} then lambda_{b,u} equals lambda_{a then b, b(t) + u}
        let m = FiniteAbelian::new(vec![2, 4]).unwrap();
        let h = holomorph(&m);
        let auts = m.automorphisms();
        for a in &auts {
            for b in &auts {
                for t in m.elements() {
                    for u in m.elements().iter().step_by(3) {
                        let lhs = h.lambda(a, &t).then(&h.lambda(b, u));
                        let bt = m.element(b.apply(m.index(&t)));
                        let rhs = h.lambda(&a.then(b), &m.add(&bt, u));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_inverts_lambda() {
        let m = FiniteAbelian::cyclic(5);
        let h = holomorph(&m);
        for g in h.group.elements() {
            let (a, t) = h.decompose(g);
            assert_eq!(a.apply(0), 0);
            assert_eq!(&h.lambda(&a, &t), g);
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteAbelian::cyclic(8).automorphisms().len(), 4);
        assert_eq!(FiniteAbelian::new(vec![2, 2, 2]).unwrap().automorphisms().len(), 168);
        assert_eq!(FiniteAbelian::new(vec![2, 4]).unwrap().automorphisms().len(), 8);
        assert_eq!(FiniteAbelian::trivial().automorphisms().len(), 1);
    }
}
