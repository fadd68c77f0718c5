use std::collections::BTreeMap;

use serde::Serialize;

use super::cohom::{cohomology, coboundary, is_cocycle};
use super::module::{Cochain, FiniteGModule};
use crate::error::{invalid, Result};
use crate::permstruct::{affine, decompose, Elem, GroupHom, Perm};

/// A homomorphism `G -> Hol M`, tabulated over the sorted elements of G.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HolHom {
    pub images: Vec<Perm>,
}

/// `g -> lambda_{phi(g), z(g)}` for a 1-cocycle z.
pub fn crossed_to_hol(gm: &FiniteGModule, z: &Cochain) -> Result<HolHom> {
    if z.arity != 1 {
        return invalid("crossed homomorphisms have arity 1");
    }
    if !is_cocycle(gm, z) {
        return invalid("not a 1-cocycle");
    }
    let images: Vec<Perm> =
        (0..gm.order()).map(|g| affine(&gm.module, gm.action_of(g), &z.table[g])).collect();
    for a in 0..gm.order() {
        for b in 0..gm.order() {
            if images[gm.mul(a, b)] != images[a].compose(&images[b]) {
                return invalid("lifted map is not a homomorphism");
            }
        }
    }
    Ok(HolHom { images })
}

/// Inverse dictionary: reads off the translation parts, checking `pi o psi = phi`.
pub fn hol_to_crossed(gm: &FiniteGModule, psi: &HolHom) -> Result<Cochain> {
    let mut table = Vec::with_capacity(gm.order());
    for (g, p) in psi.images.iter().enumerate() {
        let (a, t) = decompose(&gm.module, p);
        if &a != gm.action_of(g) {
            return invalid("homomorphism does not lift the action");
        }
        table.push(t);
    }
    Ok(Cochain { arity: 1, table })
}

impl HolHom {
    /// `tau_x o psi o tau_x^-1` with `tau_x` the translation by x.
    pub fn conjugate_by_translation(&self, gm: &FiniteGModule, x: &Elem) -> HolHom {
        let t = gm.module.translation(x);
        HolHom { images: self.images.iter().map(|p| t.conjugate(p)).collect() }
    }

    pub fn conjugate_by(&self, h: &Perm) -> HolHom {
        HolHom { images: self.images.iter().map(|p| h.conjugate(p)).collect() }
    }
}

/// Result of enumerating lifts `G -> Hol M` of the action.
#[derive(Clone, Debug, Serialize)]
pub struct HolH1 {
    /// All lifts, sorted.
    pub homs: Vec<HolHom>,
    /// M-conjugacy classes as sorted lists of indices into `homs`.
    pub classes: Vec<Vec<usize>>,
    /// Cohomology class index of each conjugacy class.
    pub to_h1: Vec<usize>,
    pub h1_order: usize,
    pub bijective: bool,
}

/// Enumerates lifts of the action to `Hol M`, groups them up to conjugation
/// by translations, and matches the groups against `H^1(G, M)`.
pub fn h1_via_hol(gm: &FiniteGModule) -> Result<HolH1> {
    let h1 = cohomology(gm, 1)?;
    let module = &gm.module;
    let gens = gm.group.small_generating_set();
    let gen_idx: Vec<usize> = gens.iter().map(|g| gm.group.index_of(g).unwrap()).collect();
    let mo = module.order();
    let mut homs = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let tgt: Vec<Perm> = gen_idx
            .iter()
            .zip(&choice)
            .map(|(&g, &c)| affine(module, gm.action_of(g), &module.element(c)))
            .collect();
        let hom = GroupHom::new(mo, gens.clone(), tgt);
        if let Ok(table) = hom.table(gm.group.degree()) {
            let images = gm.group.elements().iter().map(|g| table[g].clone()).collect();
            homs.push(HolHom { images });
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < mo {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    homs.sort();
    let index: BTreeMap<HolHom, usize> = homs.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
    let mut class_id = vec![usize::MAX; homs.len()];
    let mut classes = Vec::new();
    for i in 0..homs.len() {
        if class_id[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = module
            .elements()
            .iter()
            .map(|x| index[&homs[i].conjugate_by_translation(gm, x)])
            .collect();
        members.sort();
        members.dedup();
        for &j in &members {
            class_id[j] = classes.len();
        }
        classes.push(members);
    }
    let mut to_h1 = Vec::with_capacity(classes.len());
    for members in &classes {
        let z = hol_to_crossed(gm, &homs[members[0]])?;
        to_h1.push(h1.class_of(gm, &z)?);
    }
    let mut seen = to_h1.clone();
    seen.sort();
    seen.dedup();
    let bijective = seen.len() == to_h1.len() && to_h1.len() == h1.order();
    Ok(HolH1 { homs, classes, to_h1, h1_order: h1.order(), bijective })
}

/// Conjugating the lift of `z` by the translation `tau_x` gives the lift of `z - d(x)`.
pub fn translation_conjugate(gm: &FiniteGModule, z: &Cochain, x: &Elem) -> Result<bool> {
    let shift = Cochain::from_fn(gm, 0, |_| x.clone());
    let w = z.add(&gm.module, &coboundary(gm, &shift).neg(&gm.module));
    Ok(crossed_to_hol(gm, z)?.conjugate_by_translation(gm, x) == crossed_to_hol(gm, &w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstruct::{holomorph, FiniteAbelian, PermGroup};

    fn s3_sign() -> FiniteGModule {
        FiniteGModule::via_sign(PermGroup::symmetric(3).unwrap(), FiniteAbelian::cyclic(3), |p| p.sign() < 0)
    }

    #[test]
    fn zero_cocycle_gives_the_action() {
        let gm = s3_sign();
        let psi = crossed_to_hol(&gm, &Cochain::zero(&gm, 1)).unwrap();
        for g in 0..gm.order() {
            assert_eq!(&psi.images[g], gm.action_of(g));
        }
    }

    #[test]
    fn nonzero_classes_give_isomorphisms_onto_hol_c3() {
        let gm = s3_sign();
        let h1 = cohomology(&gm, 1).unwrap();
        let hol = holomorph(&gm.module);
        for z in &h1.representatives[1..] {
            let psi = crossed_to_hol(&gm, z).unwrap();
            let mut imgs = psi.images.clone();
            imgs.sort();
            imgs.dedup();
            assert_eq!(imgs.len(), 6);
            assert!(imgs.iter().all(|p| hol.group.contains(p)));
        }
    }

    #[test]
    fn coboundary_shift_is_translation_conjugation() {
        let gm = s3_sign();
        let h1 = cohomology(&gm, 1).unwrap();
        for z in &h1.representatives {
            for x in gm.module.elements() {
                assert!(translation_conjugate(&gm, z, &x).unwrap());
            }
        }
    }

    #[test]
    fn hol_counts_match() {
        let c2 = FiniteGModule::trivial_action(PermGroup::cyclic(2), FiniteAbelian::cyclic(2));
        let r = h1_via_hol(&c2).unwrap();
        assert_eq!((r.classes.len(), r.bijective), (2, true));
        let r = h1_via_hol(&s3_sign()).unwrap();
        assert_eq!((r.classes.len(), r.bijective), (3, true));
        let triv = FiniteGModule::trivial_action(PermGroup::trivial(1), FiniteAbelian::new(vec![2, 2]).unwrap());
        let r = h1_via_hol(&triv).unwrap();
        assert_eq!((r.classes.len(), r.bijective), (1, true));
    }

    #[test]
    fn inverse_classes_are_hol_conjugate() {
        let gm = s3_sign();
        let h1 = cohomology(&gm, 1).unwrap();
        let hol = holomorph(&gm.module);
        for z in &h1.representatives {
            let a = crossed_to_hol(&gm, z).unwrap();
            let b = crossed_to_hol(&gm, &z.neg(&gm.module)).unwrap();
            assert!(hol.group.elements().iter().any(|h| a.conjugate_by(h) == b));
        }
    }

    #[test]
    fn rejects_non_cocycles() {
        let gm = s3_sign();
        let bad = Cochain::from_fn(&gm, 1, |_| vec![1]);
        assert!(crossed_to_hol(&gm, &bad).is_err());
    }
}
