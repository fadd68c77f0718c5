use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, unsupported, Error, Result};

/// Largest degree for which `Sym(n)` is scanned exhaustively.
pub const MAX_SYM_DEGREE: usize = 8;

/// A bijection of `{0, .., n-1}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return invalid(format!("{images:?} is not a permutation"));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Perm { images }
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// Permutation from disjoint cycles on n points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n || used[a] {
                    return invalid(format!("bad cycle {c:?} on {n} points"));
                }
                used[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Perm) -> Perm {
        other.compose(self)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// `self ∘ x ∘ self^-1`
    pub fn conjugate(&self, x: &Perm) -> Perm {
        self.compose(&x.compose(&self.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn sign(&self) -> i32 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn to_cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            .collect()
    }

    /// Parses "(0 1 2)(3 4)" (commas allowed) on n points; "()" is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(r) = rest.strip_prefix('(') else {
                return invalid(format!("bad cycle notation '{s}'"));
            };
            let Some(end) = r.find(')') else {
                return invalid(format!("unclosed cycle in '{s}'"));
            };
            let body = &r[..end];
            let pts = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad point '{t}'"))))
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = r[end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    /// Lehmer rank in `0..n!`.
    pub fn rank(&self) -> usize {
        let n = self.images.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_cycle_string())
    }
}

/// All permutations of n points in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm { images: cur.clone() }];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm { images: cur.clone() });
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A permutation group given by generators, with its element list closed.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.elements == o.elements
    }
}
impl Eq for PermGroup {}

impl PermGroup {
    /// Closes the generators under composition.
    pub fn generate(n: usize, gens: Vec<Perm>) -> Result<Self> {
        if gens.iter().any(|g| g.degree() != n) {
            return invalid("generator degree mismatch");
        }
        let id = Perm::identity(n);
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        let mut elements = vec![id.clone()];
        seen.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), elements.len());
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_elements(n, gens, elements))
    }

    fn from_elements(n: usize, gens: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermGroup { n, gens, elements, index }
    }

    /// Group from a complete element list, which must be closed.
    pub fn from_closed_elements(n: usize, elements: Vec<Perm>) -> Self {
        let gens = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
        let mut g = Self::from_elements(n, gens, elements);
        g.gens = g.small_generating_set();
        g
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_elements(n, vec![], vec![Perm::identity(n)])
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n > MAX_SYM_DEGREE {
            return unsupported(format!("Sym({n}) exceeds degree cap {MAX_SYM_DEGREE}"));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]])?);
            gens.push(Perm::new((1..n).chain([0]).collect())?);
        }
        Ok(Self::from_elements(n, gens, all_perms(n)))
    }

    pub fn cyclic(n: usize) -> Self {
        let g = Perm { images: (1..n).chain([0]).collect() };
        Self::generate(n, if n > 1 { vec![g] } else { vec![] }).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// True iff every element commutes with every element of `other`.
    pub fn commutes_with(&self, other: &PermGroup) -> bool {
        self.gens
            .iter()
            .all(|a| other.gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// `sigma G sigma^-1`
    pub fn conjugate_by(&self, sigma: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|g| sigma.conjugate(g)).collect();
        let els = self.elements.iter().map(|g| sigma.conjugate(g)).collect();
        Self::from_elements(self.n, gens, els)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut orb = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < orb.len() {
                let x = orb[k];
                for g in &self.gens {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orb.push(y);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Generators picked greedily from the sorted element list.
    pub fn small_generating_set(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut cur = PermGroup::trivial(self.n);
        for x in &self.elements {
            if !cur.contains(x) {
                gens.push(x.clone());
                cur = PermGroup::generate(self.n, gens.clone()).unwrap();
                if cur.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Sorted multiset of cycle types.
    pub fn cycle_type_profile(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.elements.iter().map(|p| p.cycle_type()).collect();
        v.sort();
        v
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_cycle_string()).collect()
    }
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct G {
            degree: usize,
            order: usize,
            generators: Vec<String>,
        }
        G { degree: self.n, order: self.order(), generators: self.generator_strings() }.serialize(s)
    }
}

/// Group description accepted from text: degree plus generator cycle strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Perm::parse_cycles(self.degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate(self.degree, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_roundtrip() {
        let p = Perm::parse_cycles(5, "(0 2 4)(1,3)").unwrap();
        assert_eq!(p.to_cycle_string(), "(0 2 4)(1 3)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(3).to_cycle_string(), "()");
        assert!(Perm::parse_cycles(3, "(0 3)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn composition_convention() {
        let a = Perm::parse_cycles(3, "(0 1)").unwrap();
        let b = Perm::parse_cycles(3, "(1 2)").unwrap();
        // a ∘ b sends 1 -> 2 -> 2, 2 -> 1 -> 0
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 0);
        assert_eq!(a.then(&b), b.compose(&a));
    }

    #[test]
    fn symmetric_groups() {
        for n in 0..=6 {
            assert_eq!(PermGroup::symmetric(n).unwrap().order(), factorial(n));
        }
        let s4 = PermGroup::symmetric(4).unwrap();
        let g = PermGroup::generate(4, s4.generators().to_vec()).unwrap();
        assert_eq!(g, s4);
        assert!(PermGroup::symmetric(9).is_err());
    }

    #[test]
    fn ranks_are_a_bijection() {
        let ps = all_perms(5);
        let mut rs: Vec<usize> = ps.iter().map(|p| p.rank()).collect();
        rs.sort();
        assert_eq!(rs, (0..120).collect::<Vec<_>>());
        assert_eq!(ps[0].rank(), 0);
    }

    #[test]
    fn small_generators_regenerate() {
        let g = PermGroup::symmetric(4).unwrap();
        let h = PermGroup::from_closed_elements(4, g.elements().to_vec());
        assert_eq!(PermGroup::generate(4, h.generators().to_vec()).unwrap(), g);
    }
}
