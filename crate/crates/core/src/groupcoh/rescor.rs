use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::cohom::{cohomology, is_cocycle};
use super::module::{tuple_index, Cochain, FiniteGModule};
use crate::error::{invalid, unsupported, Result};
use crate::permstruct::{Elem, FiniteAbelian, Perm, PermGroup};

/// Lexicographically least representatives of the left cosets `gH`, sorted.
pub fn coset_reps(g: &PermGroup, h: &PermGroup) -> Result<Vec<Perm>> {
    if !h.is_subgroup_of(g) {
        return invalid("not a subgroup");
    }
    let mut reps: Vec<Perm> = Vec::new();
    let mut covered = std::collections::HashSet::new();
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for y in h.elements() {
            covered.insert(x.compose(y));
        }
    }
    Ok(reps)
}

/// Restriction of a cochain to a subgroup: table restriction.
pub fn restrict(gm: &FiniteGModule, h: &PermGroup, c: &Cochain) -> Result<(FiniteGModule, Cochain)> {
    let gh = gm.restrict(h)?;
    let to_g: Vec<usize> = h.elements().iter().map(|x| gm.group.index_of(x).unwrap()).collect();
    let res = Cochain::from_fn(&gh, c.arity, |t| {
        let tg: Vec<usize> = t.iter().map(|&i| to_g[i]).collect();
        c.table[tuple_index(gm.order(), &tg)].clone()
    });
    Ok((gh, res))
}

/// Corestriction from H to G in degrees 0 and 1 by the coset transfer.
pub fn corestrict(gm: &FiniteGModule, h: &PermGroup, c: &Cochain) -> Result<Cochain> {
    let reps = coset_reps(&gm.group, h)?;
    let m = &gm.module;
    let ridx: Vec<usize> = reps.iter().map(|s| gm.group.index_of(s).unwrap()).collect();
    match c.arity {
        0 => {
            let x = &c.table[0];
            let mut acc = m.zero();
            for &s in &ridx {
                acc = m.add(&acc, &gm.act(s, x));
            }
            Ok(Cochain { arity: 0, table: vec![acc] })
        }
        1 => {
            let hidx = |p: &Perm| h.index_of(p).expect("element of H");
            let coset_of = |p: &Perm| -> usize {
                reps.iter().position(|s| h.contains(&s.inverse().compose(p))).expect("coset")
            };
            let table = gm
                .group
                .elements()
                .iter()
                .map(|g| {
                    let mut acc = m.zero();
                    for s in &reps {
                        let gs = g.compose(s);
                        let j = coset_of(&gs);
                        let t = &reps[j];
                        let inner = t.inverse().compose(&gs);
                        acc = m.add(&acc, &gm.act(ridx[j], &c.table[hidx(&inner)]));
                    }
                    acc
                })
                .collect();
            Ok(Cochain { arity: 1, table })
        }
        n => unsupported(format!("corestriction in degree {n}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Res,
    Cor,
}

/// Restriction of a G-cochain, or corestriction of an H-cochain.
pub fn res_cor(gm: &FiniteGModule, h: &PermGroup, c: &Cochain, dir: Direction) -> Result<Cochain> {
    if c.arity > 1 {
        return unsupported("restriction and corestriction are implemented in degrees 0 and 1");
    }
    match dir {
        Direction::Res => Ok(restrict(gm, h, c)?.1),
        Direction::Cor => corestrict(gm, h, c),
    }
}

/// Checks `Cor o Res = [G:H]` on every class of `H^n(G, M)`, n in {0, 1}.
pub fn cor_res_is_index(gm: &FiniteGModule, h: &PermGroup, n: usize) -> Result<bool> {
    let hn = cohomology(gm, n)?;
    let idx = (gm.order() / h.order()) as i64;
    for z in &hn.representatives {
        let (_, r) = restrict(gm, h, z)?;
        let back = corestrict(gm, h, &r)?;
        if hn.class_of(gm, &back)? != hn.class_of(gm, &z.scalar(&gm.module, idx))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A homomorphism of abelian groups, tabulated on element indices of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleMap {
    pub table: Vec<Elem>,
}

impl ModuleMap {
    pub fn from_images(src: &FiniteAbelian, dst: &FiniteAbelian, imgs: &[Elem]) -> Result<Self> {
        if imgs.len() != src.rank() {
            return invalid("one image per cyclic factor is required");
        }
        src.hom_from_images(dst, imgs)
            .map(|table| ModuleMap { table })
            .ok_or_else(|| crate::Error::InvalidInput("images do not define a homomorphism".into()))
    }

    pub fn apply(&self, src: &FiniteAbelian, x: &Elem) -> Elem {
        self.table[src.index(x)].clone()
    }

    /// Equivariance under the elements of `h` (a subgroup of both groups).
    pub fn is_linear_over(&self, x: &FiniteGModule, y: &FiniteGModule, h: &PermGroup) -> bool {
        h.elements().iter().all(|p| {
            let gx = x.group.index_of(p).unwrap();
            let gy = y.group.index_of(p).unwrap();
            x.module
                .elements()
                .iter()
                .all(|v| self.apply(&x.module, &x.act(gx, v)) == y.act(gy, &self.apply(&x.module, v)))
        })
    }

    pub fn push(&self, x: &FiniteAbelian, c: &Cochain) -> Cochain {
        Cochain { arity: c.arity, table: c.table.iter().map(|v| self.apply(x, v)).collect() }
    }
}

/// `f~(v) = sum over gH of g f(g^-1 v)`.
pub fn induced_map(x: &FiniteGModule, y: &FiniteGModule, h: &PermGroup, f: &ModuleMap) -> Result<ModuleMap> {
    let reps = coset_reps(&x.group, h)?;
    let table = x
        .module
        .elements()
        .iter()
        .map(|v| {
            let mut acc = y.module.zero();
            for s in &reps {
                let si = x.group.index_of(s).unwrap();
                let sinv = x.group.index_of(&s.inverse()).unwrap();
                let w = f.apply(&x.module, &x.act(sinv, v));
                acc = y.module.add(&acc, &y.act(si, &w));
            }
            acc
        })
        .collect();
    Ok(ModuleMap { table })
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma53Outcome {
    pub holds: bool,
    pub classes_checked: usize,
    /// A class of `H^n(G, X)` on which the two sides differ.
    pub counterexample: Option<Cochain>,
}

/// Verifies `Cor(f_* Res s) = f~_* s` on every class `s` of `H^n(G, X)`.
pub fn lemma53_check(
    x: &FiniteGModule,
    y: &FiniteGModule,
    h: &PermGroup,
    f: &ModuleMap,
    n: usize,
) -> Result<Lemma53Outcome> {
    if x.group != y.group {
        return invalid("X and Y must be modules over the same group");
    }
    if n > 1 {
        return unsupported("only degrees 0 and 1 are supported");
    }
    if !h.is_subgroup_of(&x.group) {
        return invalid("not a subgroup");
    }
    if !f.is_linear_over(x, y, h) {
        return invalid("f is not H-linear");
    }
    let ft = induced_map(x, y, h, f)?;
    let hx = cohomology(x, n)?;
    let hy = cohomology(y, n)?;
    for s in &hx.representatives {
        let (_, r) = restrict(x, h, s)?;
        let pushed = f.push(&x.module, &r);
        let lhs = corestrict(y, h, &pushed)?;
        let rhs = ft.push(&x.module, s);
        debug_assert!(is_cocycle(y, &rhs));
        if hy.class_of(y, &lhs)? != hy.class_of(y, &rhs)? {
            return Ok(Lemma53Outcome { holds: false, classes_checked: hx.order(), counterexample: Some(s.clone()) });
        }
    }
    Ok(Lemma53Outcome { holds: true, classes_checked: hx.order(), counterexample: None })
}

/// A bilinear map `X x Y -> W`, tabulated on element indices.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub table: Vec<Vec<Elem>>,
}

impl Pairing {
    pub fn from_fn(x: &FiniteAbelian, y: &FiniteAbelian, f: impl Fn(&Elem, &Elem) -> Elem) -> Self {
        let ye = y.elements();
        Pairing { table: x.elements().iter().map(|a| ye.iter().map(|b| f(a, b)).collect()).collect() }
    }

    fn at(&self, x: &FiniteAbelian, y: &FiniteAbelian, a: &Elem, b: &Elem) -> &Elem {
        &self.table[x.index(a)][y.index(b)]
    }

    pub fn is_bilinear(&self, x: &FiniteAbelian, y: &FiniteAbelian, w: &FiniteAbelian) -> bool {
        let (xe, ye) = (x.elements(), y.elements());
        xe.iter().all(|a| {
            ye.iter().all(|b| {
                xe.iter().all(|a2| {
                    self.at(x, y, &x.add(a, a2), b) == &w.add(self.at(x, y, a, b), self.at(x, y, a2, b))
                }) && ye.iter().all(|b2| {
                    self.at(x, y, a, &y.add(b, b2)) == &w.add(self.at(x, y, a, b), self.at(x, y, a, b2))
                })
            })
        })
    }

    pub fn is_equivariant(&self, gx: &FiniteGModule, gy: &FiniteGModule, gw: &FiniteGModule) -> bool {
        let (x, y) = (&gx.module, &gy.module);
        (0..gx.order()).all(|g| {
            x.elements().iter().all(|a| {
                y.elements()
                    .iter()
                    .all(|b| self.at(x, y, &gx.act(g, a), &gy.act(g, b)) == &gw.act(g, self.at(x, y, a, b)))
            })
        })
    }
}

/// `(z1 u z2)(g, h) = pairing(z1(g), g . z2(h))`.
pub fn cup11(
    gx: &FiniteGModule,
    gy: &FiniteGModule,
    gw: &FiniteGModule,
    z1: &Cochain,
    z2: &Cochain,
    pairing: &Pairing,
) -> Result<Cochain> {
    if gx.group != gy.group || gx.group != gw.group {
        return invalid("modules must share the group");
    }
    if z1.arity != 1 || z2.arity != 1 || !is_cocycle(gx, z1) || !is_cocycle(gy, z2) {
        return invalid("inputs must be 1-cocycles");
    }
    if !pairing.is_bilinear(&gx.module, &gy.module, &gw.module) || !pairing.is_equivariant(gx, gy, gw) {
        return invalid("pairing is not an equivariant bilinear map");
    }
    let out = Cochain::from_fn(gw, 2, |t| {
        let b = gy.act(t[0], &z2.table[t[1]]);
        pairing.at(&gx.module, &gy.module, &z1.table[t[0]], &b).clone()
    });
    if !is_cocycle(gw, &out) {
        return invalid("cup product is not a cocycle");
    }
    Ok(out)
}

/// A randomly drawn input for [`lemma53_check`].
#[derive(Clone, Debug)]
pub struct Lemma53Instance {
    pub label: String,
    pub x: FiniteGModule,
    pub y: FiniteGModule,
    pub h: PermGroup,
    pub f: ModuleMap,
    pub n: usize,
}

fn small_groups() -> Vec<(&'static str, PermGroup)> {
    let p = |n, s: &str| Perm::parse_cycles(n, s).unwrap();
    let gen = |n, gs: &[&str]| PermGroup::generate(n, gs.iter().map(|s| p(n, s)).collect()).unwrap();
    vec![
        ("C2", PermGroup::cyclic(2)),
        ("C3", PermGroup::cyclic(3)),
        ("S3", PermGroup::symmetric(3).unwrap()),
        ("C4", PermGroup::cyclic(4)),
        ("V4", gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"])),
        ("D4", gen(4, &["(0 1 2 3)", "(0 2)"])),
        ("A4", gen(4, &["(0 1 2)", "(0 1)(2 3)"])),
        ("S4", PermGroup::symmetric(4).unwrap()),
    ]
}

/// Small modules over a permutation group of degree d.
fn small_modules(g: &PermGroup) -> Vec<(String, FiniteGModule)> {
    let d = g.degree();
    let mut out = Vec::new();
    for n in [2u32, 3, 4] {
        out.push((format!("C{n} trivial"), FiniteGModule::trivial_action(g.clone(), FiniteAbelian::cyclic(n))));
    }
    out.push((
        "C2xC2 trivial".into(),
        FiniteGModule::trivial_action(g.clone(), FiniteAbelian::new(vec![2, 2]).unwrap()),
    ));
    if g.elements().iter().any(|p| p.sign() < 0) {
        for n in [3u32, 4] {
            out.push((
                format!("C{n} sign"),
                FiniteGModule::via_sign(g.clone(), FiniteAbelian::cyclic(n), |p| p.sign() < 0),
            ));
        }
    }
    if d <= 4 {
        out.push(("F2 permutation".into(), permutation_module(g)));
    }
    if d >= 3 {
        out.push(("F2 augmentation".into(), augmentation_module(g)));
    }
    out
}

/// `F_2^d` with G permuting coordinates.
pub fn permutation_module(g: &PermGroup) -> FiniteGModule {
    let d = g.degree();
    let m = FiniteAbelian::new(vec![2; d]).unwrap();
    let action = g
        .elements()
        .iter()
        .map(|p| {
            m.perm_of(|v| {
                let mut w = vec![0; d];
                for i in 0..d {
                    w[p.apply(i)] = v[i];
                }
                w
            })
        })
        .collect();
    FiniteGModule::from_table(g.clone(), m, action)
}

/// The sum-zero part of `F_2^d`, in the basis `e_i + e_(i+1)`.
pub fn augmentation_module(g: &PermGroup) -> FiniteGModule {
    let d = g.degree();
    let m = FiniteAbelian::new(vec![2; d - 1]).unwrap();
    let action = g
        .elements()
        .iter()
        .map(|p| {
            m.perm_of(|a| {
                // coordinates a -> vector v with v_i = a_(i-1) + a_i
                let mut v = vec![0u32; d];
                for i in 0..d {
                    let left = if i > 0 { a[i - 1] } else { 0 };
                    let right = if i < d - 1 { a[i] } else { 0 };
                    v[i] = (left + right) % 2;
                }
                let mut w = vec![0u32; d];
                for i in 0..d {
                    w[p.apply(i)] = v[i];
                }
                // back to coordinates: a_i = w_0 + .. + w_i
                let mut acc = 0;
                (0..d - 1)
                    .map(|i| {
                        acc = (acc + w[i]) % 2;
                        acc
                    })
                    .collect()
            })
        })
        .collect();
    FiniteGModule::from_table(g.clone(), m, action)
}

fn all_maps(x: &FiniteAbelian, y: &FiniteAbelian) -> Vec<ModuleMap> {
    let ye = y.elements();
    let r = x.rank();
    let mut out = Vec::new();
    let mut choice = vec![0usize; r];
    loop {
        let imgs: Vec<Elem> = choice.iter().map(|&c| ye[c].clone()).collect();
        if let Some(table) = x.hom_from_images(y, &imgs) {
            out.push(ModuleMap { table });
        }
        let mut k = 0;
        while k < r {
            choice[k] += 1;
            if choice[k] < ye.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == r {
            return out;
        }
    }
}

/// Draws a random instance; about one in five is the S3 augmentation case.
pub fn random_lemma53_instance<R: Rng>(rng: &mut R) -> Lemma53Instance {
    if rng.gen_ratio(1, 5) {
        return chi_instance(rng.gen_range(0..3), rng.gen_range(0..2));
    }
    let groups = small_groups();
    loop {
        let (gname, g) = groups.choose(rng).unwrap().clone();
        let h = match rng.gen_range(0..4) {
            0 => PermGroup::trivial(g.degree()),
            1 => g.clone(),
            _ => {
                let a = g.elements().choose(rng).unwrap().clone();
                PermGroup::generate(g.degree(), vec![a]).unwrap()
            }
        };
        let mods = small_modules(&g);
        let (xn, x) = mods.choose(rng).unwrap().clone();
        let (yn, y) = mods.choose(rng).unwrap().clone();
        let maps: Vec<ModuleMap> =
            all_maps(&x.module, &y.module).into_iter().filter(|f| f.is_linear_over(&x, &y, &h)).collect();
        let Some(f) = maps.choose(rng).cloned() else { continue };
        let n = rng.gen_range(0..2);
        let label = format!("G={gname} |H|={} X={xn} Y={yn} n={n}", h.order());
        return Lemma53Instance { label, x, y, h, f, n };
    }
}

/// S3 on `C2 x C2`, H generated by a transposition, Y = C2 trivial and f the
/// H-invariant coordinate character.
pub fn chi_instance(which: usize, n: usize) -> Lemma53Instance {
    let g = PermGroup::symmetric(3).unwrap();
    let transpositions = ["(0 1)", "(1 2)", "(0 2)"];
    let t = Perm::parse_cycles(3, transpositions[which % 3]).unwrap();
    let h = PermGroup::generate(3, vec![t.clone()]).unwrap();
    let x = augmentation_module(&g);
    let y = FiniteGModule::trivial_action(g.clone(), FiniteAbelian::cyclic(2));
    let f = all_maps(&x.module, &y.module)
        .into_iter()
        .find(|f| f.table.iter().any(|v| v[0] != 0) && f.is_linear_over(&x, &y, &h))
        .expect("an H-invariant character exists");
    Lemma53Instance { label: format!("chi H=<{t}> n={n}"), x, y, h, f, n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3_sign() -> FiniteGModule {
        FiniteGModule::via_sign(PermGroup::symmetric(3).unwrap(), FiniteAbelian::cyclic(3), |p| p.sign() < 0)
    }

    #[test]
    fn coset_reps_are_lex_minimal() {
        let g = PermGroup::symmetric(3).unwrap();
        let h = PermGroup::generate(3, vec![Perm::parse_cycles(3, "(1 2)").unwrap()]).unwrap();
        let reps = coset_reps(&g, &h).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(reps[0].is_identity());
        for s in &reps {
            let coset: Vec<Perm> = h.elements().iter().map(|y| s.compose(y)).collect();
            assert_eq!(coset.iter().min().unwrap(), s);
        }
    }

    #[test]
    fn cor_res_on_s3_sign_is_doubling() {
        let gm = s3_sign();
        let c3 = PermGroup::generate(3, vec![Perm::parse_cycles(3, "(0 1 2)").unwrap()]).unwrap();
        let h1 = cohomology(&gm, 1).unwrap();
        for z in &h1.representatives {
            let (_, r) = restrict(&gm, &c3, z).unwrap();
            let back = corestrict(&gm, &c3, &r).unwrap();
            let minus = h1.class_of(&gm, &z.neg(&gm.module)).unwrap();
            assert_eq!(h1.class_of(&gm, &back).unwrap(), minus);
        }
        assert!(cor_res_is_index(&gm, &c3, 0).unwrap());
    }

    #[test]
    fn cor_res_trivial_subgroup_c2() {
        let gm = FiniteGModule::trivial_action(PermGroup::cyclic(2), FiniteAbelian::cyclic(4));
        let one = PermGroup::trivial(2);
        for v in gm.module.elements() {
            let c = Cochain { arity: 0, table: vec![v.clone()] };
            let (_, r) = restrict(&gm, &one, &c).unwrap();
            let back = corestrict(&gm, &one, &r).unwrap();
            assert_eq!(back.table[0], gm.module.scalar(2, &v));
        }
    }

    #[test]
    fn cor_res_index_over_many_modules() {
        for (_, g) in small_groups().into_iter().take(6) {
            let subgroups = [PermGroup::trivial(g.degree()), g.clone()];
            for (_, gm) in small_modules(&g) {
                for h in &subgroups {
                    for n in 0..2 {
                        assert!(cor_res_is_index(&gm, h, n).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn chi_instances_hold() {
        for which in 0..3 {
            for n in 0..2 {
                let i = chi_instance(which, n);
                let out = lemma53_check(&i.x, &i.y, &i.h, &i.f, i.n).unwrap();
                assert!(out.holds, "{}", i.label);
            }
        }
    }

    #[test]
    fn norm_map_instance() {
        let g = PermGroup::cyclic(2);
        let x = FiniteGModule::trivial_action(g.clone(), FiniteAbelian::cyclic(2));
        let f = ModuleMap { table: vec![vec![0], vec![1]] };
        let one = PermGroup::trivial(2);
        let ft = induced_map(&x, &x, &one, &f).unwrap();
        assert_eq!(ft.table, vec![vec![0], vec![0]]);
        assert!(lemma53_check(&x, &x, &one, &f, 0).unwrap().holds);
    }

    #[test]
    fn random_instances_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..30 {
            let i = random_lemma53_instance(&mut rng);
            let out = lemma53_check(&i.x, &i.y, &i.h, &i.f, i.n).unwrap();
            assert!(out.holds, "{}", i.label);
        }
    }

    #[test]
    fn non_linear_map_is_rejected() {
        let i = chi_instance(0, 1);
        let g = i.x.group.clone();
        let bad = all_maps(&i.x.module, &i.y.module)
            .into_iter()
            .find(|f| !f.is_linear_over(&i.x, &i.y, &g))
            .unwrap();
        assert!(lemma53_check(&i.x, &i.y, &g, &bad, 1).is_err());
    }

    #[test]
    fn cup_of_generator_with_itself() {
        let gm = FiniteGModule::trivial_action(PermGroup::cyclic(2), FiniteAbelian::cyclic(2));
        let p = Pairing::from_fn(&gm.module, &gm.module, |a, b| vec![a[0] * b[0] % 2]);
        let h1 = cohomology(&gm, 1).unwrap();
        let h2 = cohomology(&gm, 2).unwrap();
        let z = &h1.representatives[1];
        let c = cup11(&gm, &gm, &gm, z, z, &p).unwrap();
        assert_eq!(h2.order(), 2);
        assert_eq!(h2.class_of(&gm, &c).unwrap(), 1);
        let zero = cup11(&gm, &gm, &gm, &Cochain::zero(&gm, 1), z, &p).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn cup_swap_killed_by_two() {
        let gm = FiniteGModule::trivial_action(PermGroup::cyclic(2), FiniteAbelian::cyclic(2));
        let p = Pairing::from_fn(&gm.module, &gm.module, |a, b| vec![a[0] * b[0] % 2]);
        let h1 = cohomology(&gm, 1).unwrap();
        let h2 = cohomology(&gm, 2).unwrap();
        for a in &h1.representatives {
            for b in &h1.representatives {
                let s = cup11(&gm, &gm, &gm, a, b, &p).unwrap().add(&gm.module, &cup11(&gm, &gm, &gm, b, a, &p).unwrap());
                assert_eq!(h2.class_of(&gm, &s.scalar(&gm.module, 2)).unwrap(), 0);
            }
        }
    }
}
