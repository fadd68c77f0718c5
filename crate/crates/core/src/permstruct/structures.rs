use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::perm::{all_perms, factorial, Perm, PermGroup, MAX_SYM_DEGREE};
use crate::error::{invalid, unsupported, Result};

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_SYM_DEGREE {
        return unsupported(format!("degree {n} exceeds cap {MAX_SYM_DEGREE}"));
    }
    Ok(())
}

/// Left and right regular representations of G on its own (sorted) elements.
///
/// `left(g)(x) = g x` and `right(g)(x) = x g^-1`.
pub fn cayley_images(g: &PermGroup) -> (PermGroup, PermGroup) {
    let els = g.elements();
    let n = els.len();
    let left_of = |a: &Perm| -> Perm {
        Perm::from_images_unchecked(els.iter().map(|x| g.index_of(&a.compose(x)).unwrap()).collect())
    };
    let right_of = |a: &Perm| -> Perm {
        let ai = a.inverse();
        Perm::from_images_unchecked(els.iter().map(|x| g.index_of(&x.compose(&ai)).unwrap()).collect())
    };
    let lg: Vec<Perm> = g.generators().iter().map(left_of).collect();
    let rg: Vec<Perm> = g.generators().iter().map(right_of).collect();
    (
        PermGroup::generate(n, lg).expect("regular degree"),
        PermGroup::generate(n, rg).expect("regular degree"),
    )
}

/// The centralizer of H in `Sym(n)`, by a filtered scan of `Sym(n)`.
pub fn centralizer_in_sym(h: &PermGroup) -> Result<PermGroup> {
    let n = h.degree();
    check_degree(n)?;
    let els: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|s| h.generators().iter().all(|g| s.compose(g) == g.compose(s)))
        .collect();
    Ok(PermGroup::from_closed_elements(n, els))
}

/// The normalizer of H in `Sym(n)`.
pub fn normalizer_in_sym(h: &PermGroup) -> Result<PermGroup> {
    let n = h.degree();
    check_degree(n)?;
    let els: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|s| h.generators().iter().all(|g| h.contains(&s.conjugate(g))))
        .collect();
    Ok(PermGroup::from_closed_elements(n, els))
}

/// All distinct `Sym(n)`-conjugates of G, each with a conjugating element,
/// sorted by element list.
pub fn conjugates_in_sym(g: &PermGroup) -> Result<Vec<(PermGroup, Perm)>> {
    let n = g.degree();
    check_degree(n)?;
    let norm = normalizer_in_sym(g)?;
    let mut visited = vec![false; factorial(n)];
    let mut out = Vec::new();
    for s in all_perms(n) {
        if visited[s.rank()] {
            continue;
        }
        for x in norm.elements() {
            visited[s.compose(x).rank()] = true;
        }
        out.push((g.conjugate_by(&s), s));
    }
    out.sort_by(|a, b| a.0.elements().cmp(b.0.elements()));
    Ok(out)
}

/// One G-structure: a conjugate `G'` containing the image, and an
/// isomorphism `G' -> G` given by conjugation `x -> sigma x sigma^-1`.
#[derive(Clone, Debug, Serialize)]
pub struct GStructureWitness {
    pub conjugate: PermGroup,
    pub sigma: Perm,
}

#[derive(Clone, Debug, Serialize)]
pub struct GStructureCount {
    pub count: usize,
    /// Number of conjugates of G containing the image.
    pub conjugates: usize,
    /// G-conjugacy classes of identifications per conjugate: `[N(G) : G C(G)]`.
    pub identifications_per_conjugate: usize,
    pub witnesses: Vec<GStructureWitness>,
}

/// Counts G-structures on an algebra whose Galois group is `image`.
///
/// A G-structure is a conjugate `G'` of G containing the image together with a
/// G-conjugacy class of isomorphisms `G' -> G` induced by `Sym(n)`. For fixed
/// `G'` those classes are the cosets of `G C(G)` in the normalizer `N(G)`.
pub fn count_g_structures(image: &PermGroup, g: &PermGroup) -> Result<GStructureCount> {
    let n = g.degree();
    if image.degree() != n {
        return invalid("image and G must act on the same points");
    }
    check_degree(n)?;
    let norm = normalizer_in_sym(g)?;
    let cent = centralizer_in_sym(g)?;
    // G C(G) is a subgroup because C(G) normalizes G
    let mut gc: BTreeSet<&Perm> = BTreeSet::new();
    let prods: Vec<Perm> = g
        .elements()
        .iter()
        .flat_map(|a| cent.elements().iter().map(move |c| a.compose(c)))
        .collect();
    for p in &prods {
        gc.insert(p);
    }
    let per = norm.order() / gc.len();
    // coset representatives of G C(G) in N(G), lexicographically minimal
    let mut reps: Vec<Perm> = Vec::new();
    let mut covered: BTreeSet<Perm> = BTreeSet::new();
    for x in norm.elements() {
        if covered.contains(x) {
            continue;
        }
        for y in &gc {
            covered.insert(x.compose(y));
        }
        reps.push(x.clone());
    }
    let mut witnesses = Vec::new();
    let mut conj_count = 0;
    for (gp, s) in conjugates_in_sym(g)? {
        if !image.is_subgroup_of(&gp) {
            continue;
        }
        conj_count += 1;
        // s G s^-1 = G', so s^-1 maps G' onto G; compose with the N(G) representatives
        let back = s.inverse();
        for r in &reps {
            witnesses.push(GStructureWitness { conjugate: gp.clone(), sigma: r.compose(&back) });
        }
    }
    Ok(GStructureCount { count: conj_count * per, conjugates: conj_count, identifications_per_conjugate: per, witnesses })
}

/// A homomorphism given by images of the generators of its source group.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub target_degree: usize,
    pub source_gens: Vec<Perm>,
    pub target_gens: Vec<Perm>,
}

impl GroupHom {
    pub fn new(target_degree: usize, source_gens: Vec<Perm>, target_gens: Vec<Perm>) -> Self {
        GroupHom { target_degree, source_gens, target_gens }
    }

    /// Homomorphism determined by a function already known to be multiplicative.
    pub fn from_fn(source: &PermGroup, target_degree: usize, f: impl Fn(&Perm) -> Perm) -> Self {
        let sg = source.generators().to_vec();
        let tg = sg.iter().map(&f).collect();
        GroupHom::new(target_degree, sg, tg)
    }

    /// Full element table over the group generated by the source generators.
    ///
    /// Fails if the generator images do not define a homomorphism.
    pub fn table(&self, source_degree: usize) -> Result<HashMap<Perm, Perm>> {
        let mut map: HashMap<Perm, Perm> = HashMap::new();
        map.insert(Perm::identity(source_degree), Perm::identity(self.target_degree));
        let mut queue = vec![Perm::identity(source_degree)];
        while let Some(x) = queue.pop() {
            let fx = map[&x].clone();
            for (g, tg) in self.source_gens.iter().zip(&self.target_gens) {
                let y = g.compose(&x);
                let fy = tg.compose(&fx);
                match map.get(&y) {
                    Some(prev) if *prev != fy => return invalid("generator images do not define a homomorphism"),
                    Some(_) => {}
                    None => {
                        map.insert(y.clone(), fy);
                        queue.push(y);
                    }
                }
            }
        }
        Ok(map)
    }
}

/// Image of `phi_image` under rho, after checking rho is a homomorphism on it.
pub fn resolvent_image(phi_image: &PermGroup, rho: &GroupHom) -> Result<PermGroup> {
    let table = rho.table(phi_image.degree())?;
    for g in phi_image.generators() {
        if !table.contains_key(g) {
            return invalid("rho is not defined on the whole image");
        }
    }
    let gens: Vec<Perm> = phi_image.generators().iter().map(|g| table[g].clone()).collect();
    PermGroup::generate(rho.target_degree, gens)
}

/// The sign map `Sym(n) -> Sym(2)`.
pub fn sign_hom(source: &PermGroup) -> GroupHom {
    GroupHom::from_fn(source, 2, |p| {
        if p.sign() == 1 {
            Perm::identity(2)
        } else {
            Perm::from_images_unchecked(vec![1, 0])
        }
    })
}

/// `Sym(4) -> Sym(3)` through the action on the pairings `{01|23, 02|13, 03|12}`.
pub fn s4_to_s3(source: &PermGroup) -> GroupHom {
    GroupHom::from_fn(source, 3, s4_pairing_action)
}

pub fn s4_pairing_action(p: &Perm) -> Perm {
    let pairings: [[usize; 2]; 3] = [[0, 1], [0, 2], [0, 3]];
    let idx = |a: usize, b: usize| -> usize {
        // the pairing containing {a, b}
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if lo == 0 {
            hi - 1
        } else {
            // complement pair of {0, x}
            6 - lo - hi - 1
        }
    };
    Perm::from_images_unchecked(pairings.iter().map(|&[a, b]| idx(p.apply(a), p.apply(b))).collect())
}

/// An equivalence relation on `{0..n-1}`, as sorted blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    fn block_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = k;
            }
        }
        out
    }

    /// True iff p maps blocks onto blocks.
    pub fn is_stable_under(&self, p: &Perm) -> bool {
        let of = self.block_of(p.degree());
        self.blocks.iter().all(|b| b.iter().all(|&x| of[p.apply(x)] == of[p.apply(b[0])]))
    }

    /// Uniform block size t with b blocks, if all blocks have equal size.
    pub fn uniform(&self) -> Option<(usize, usize)> {
        let t = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == t).then_some((t, self.blocks.len()))
    }

    pub fn to_string_compact(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// All set partitions of `{0..n-1}` (restricted growth strings).
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, maxb: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = rgs.len();
        if i == n {
            let nb = rgs.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); nb];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(Partition { blocks });
            return;
        }
        for b in 0..=maxb {
            rgs[i] = b;
            rec(i + 1, maxb.max(b + 1), rgs, out);
        }
    }
    if n == 0 {
        return vec![Partition { blocks: vec![] }];
    }
    rgs[0] = 0;
    rec(1, 1, &mut rgs, &mut out);
    out
}

/// The wreath product `S_t wr S_b` preserving a uniform partition.
pub fn wreath_product_of(p: &Partition, n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    let els: Vec<Perm> = all_perms(n).into_iter().filter(|s| p.is_stable_under(s)).collect();
    Ok(PermGroup::from_closed_elements(n, els))
}

#[derive(Clone, Debug, Serialize)]
pub struct StablePartition {
    pub partition: Partition,
    pub block_sizes: Vec<usize>,
    /// Set for uniform partitions: H lies in the corresponding wreath product.
    pub in_wreath_product: Option<bool>,
}

/// Equivalence relations on the points preserved by H.
pub fn stable_partitions(h: &PermGroup) -> Result<Vec<StablePartition>> {
    let n = h.degree();
    check_degree(n)?;
    let mut out = Vec::new();
    for p in all_partitions(n) {
        if h.elements().iter().all(|g| p.is_stable_under(g)) {
            let in_wreath = match p.uniform() {
                Some((t, b)) if t > 1 && b > 1 => Some(h.is_subgroup_of(&wreath_product_of(&p, n)?)),
                _ => None,
            };
            out.push(StablePartition { block_sizes: p.block_sizes(), partition: p, in_wreath_product: in_wreath });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsorStructures {
    /// Conjugates of the left regular image commuting with the Galois image.
    pub torsor_subgroups: Vec<PermGroup>,
    /// Their centralizers: conjugates of the right regular image containing the Galois image.
    pub matched_structures: Vec<PermGroup>,
    /// Torsor structures up to conjugation in G, counted with identifications.
    pub count: usize,
    /// Independent G-structure count for the right regular image.
    pub g_structure_count: usize,
}

/// Torsor structures on an algebra with Galois group `image` (degree `|G|`).
pub fn torsor_structures(image: &PermGroup, g: &PermGroup) -> Result<TorsorStructures> {
    let (left, right) = cayley_images(g);
    let n = left.degree();
    if image.degree() != n {
        return invalid(format!("image must act on {n} points"));
    }
    check_degree(n)?;
    let cent_img = centralizer_in_sym(image)?;
    let mut subs = Vec::new();
    let mut matched = Vec::new();
    let mut per = 0;
    for (gp, _) in conjugates_in_sym(&left)? {
        if gp.is_subgroup_of(&cent_img) {
            let c = centralizer_in_sym(&gp)?;
            debug_assert!(image.is_subgroup_of(&c));
            matched.push(c);
            subs.push(gp);
        }
    }
    if !subs.is_empty() {
        per = count_g_structures(&PermGroup::trivial(n), &left)?.identifications_per_conjugate;
    }
    let gs = count_g_structures(image, &right)?;
    Ok(TorsorStructures { count: subs.len() * per, torsor_subgroups: subs, matched_structures: matched, g_structure_count: gs.count })
}
