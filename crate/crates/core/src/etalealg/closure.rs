use super::algebra::{fields_isomorphic, EtaleAlgebra};
use crate::error::{invalid, unsupported, Result};
use crate::exactpoly::{roots_in_extension, tensor_factors, QuotientRing, RationalPoly};
use crate::permstruct::{Perm, PermGroup};

/// `L (x) T` with `T = Q[sqrt disc L]`: the closure attached to a coclass of
/// a module of order 2 or 3.
pub fn torsor_closure(l: &EtaleAlgebra) -> Result<EtaleAlgebra> {
    match l.degree() {
        0 => invalid("empty algebra"),
        1 | 2 => Ok(l.clone()),
        3 => {
            let d = l.disc_class();
            if d.is_trivial() {
                return l.product(l);
            }
            let t = d.quadratic_poly();
            let mut fs = Vec::new();
            for phi in l.factors() {
                fs.extend(tensor_factors(phi, &t)?);
            }
            EtaleAlgebra::from_factors(&fs)
        }
        n => unsupported(format!("closures of degree-{n} algebras are out of scope")),
    }
}

fn element_orders(elems: &[Perm]) -> Vec<usize> {
    let mut v: Vec<usize> = elems.iter().map(|p| p.order()).collect();
    v.sort();
    v
}

/// Element-order multisets of the subgroups of G of order d.
fn subgroup_profiles(g: &PermGroup, d: usize) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut out = Vec::new();
    if d == g.order() {
        out.push(element_orders(g.elements()));
        return out;
    }
    let els = g.elements();
    for (i, a) in els.iter().enumerate() {
        for b in &els[i..] {
            let h = PermGroup::generate(n, vec![a.clone(), b.clone()]).expect("subgroup");
            if h.order() == d {
                let prof = element_orders(h.elements());
                if !out.contains(&prof) {
                    out.push(prof);
                }
            }
        }
    }
    out
}

/// Automorphisms of the field `Q[t]/(f)` as images of t, if it is Galois.
pub fn galois_automorphisms(f: &RationalPoly) -> Result<Option<Vec<RationalPoly>>> {
    let roots = roots_in_extension(f, f)?;
    Ok((roots.len() == f.degree()).then_some(roots))
}

fn automorphism_orders(f: &RationalPoly, auts: &[RationalPoly]) -> Vec<usize> {
    let k = QuotientRing::new(f);
    let t = RationalPoly::x();
    let id = k.reduce(&t);
    let mut orders: Vec<usize> = auts
        .iter()
        .map(|r| {
            // sigma^m(t) = r(sigma^{m-1}(t))
            let mut cur = r.clone();
            let mut m = 1;
            while cur != id {
                cur = k.eval(&cur, r);
                m += 1;
            }
            m
        })
        .collect();
    orders.sort();
    orders
}

/// Whether L is a G-torsor: its Galois image lies in a conjugate of the
/// Cayley image of G. Requires `|G| = deg L`.
pub fn is_g_torsor(l: &EtaleAlgebra, g: &PermGroup) -> Result<bool> {
    if g.order() != l.degree() {
        return invalid(format!("|G| = {} but the algebra has degree {}", g.order(), l.degree()));
    }
    let fs = l.factors();
    let f = &fs[0];
    for other in &fs[1..] {
        if !fields_isomorphic(f, other)? {
            return Ok(false);
        }
    }
    if f.degree() == 1 {
        return Ok(true);
    }
    let Some(auts) = galois_automorphisms(f)? else {
        return Ok(false);
    };
    let profile = automorphism_orders(f, &auts);
    Ok(subgroup_profiles(g, f.degree()).contains(&profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permstruct::PermGroup;

    fn alg(s: &str) -> EtaleAlgebra {
        EtaleAlgebra::from_poly(&RationalPoly::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn closure_of_pure_cubic_is_a_sextic_field() {
        let e = torsor_closure(&alg("-2,0,0,1")).unwrap();
        assert_eq!(e.factor_degrees(), vec![6]);
        assert!(is_g_torsor(&e, &PermGroup::symmetric(3).unwrap()).unwrap());
        assert!(!is_g_torsor(&e, &PermGroup::cyclic(6)).unwrap());
    }

    #[test]
    fn closure_of_cyclic_cubic_is_split() {
        let l = alg("-1,-3,0,1");
        let e = torsor_closure(&l).unwrap();
        assert_eq!(e.factor_degrees(), vec![3, 3]);
        assert!(e.is_isomorphic(&l.product(&l).unwrap()).unwrap());
        assert!(is_g_torsor(&e, &PermGroup::symmetric(3).unwrap()).unwrap());
    }

    #[test]
    fn quadratic_closure_is_itself() {
        let l = alg("-5,0,1");
        assert_eq!(torsor_closure(&l).unwrap(), l);
        assert!(torsor_closure(&alg("1,0,-10,0,1")).unwrap_err().is_unsupported());
    }

    #[test]
    fn torsor_examples() {
        assert!(is_g_torsor(&alg("-2,0,1"), &PermGroup::cyclic(2)).unwrap());
        assert!(!is_g_torsor(&alg("-2,0,0,1"), &PermGroup::cyclic(3)).unwrap());
        assert!(is_g_torsor(&alg("-1,-3,0,1"), &PermGroup::cyclic(3)).unwrap());
        assert!(is_g_torsor(&alg("-6,11,-6,1"), &PermGroup::cyclic(3)).unwrap());
        assert!(is_g_torsor(&alg("1,1,1,1,1"), &PermGroup::cyclic(4)).unwrap());
        let v4 = PermGroup::generate(4, vec![
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ])
        .unwrap();
        assert!(!is_g_torsor(&alg("1,1,1,1,1"), &v4).unwrap());
        assert!(is_g_torsor(&alg("1,0,-10,0,1"), &v4).unwrap());
        // (x^2-2)(x^2-3): the image contains a transposition, which is not free
        assert!(!is_g_torsor(&alg("6,0,-5,0,1"), &v4).unwrap());
        let twice = EtaleAlgebra::from_factors(&[
            RationalPoly::parse("-2,0,1").unwrap(),
            RationalPoly::parse("-8,0,1").unwrap(),
        ])
        .unwrap();
        assert!(is_g_torsor(&twice, &v4).unwrap());
        assert!(is_g_torsor(&twice, &PermGroup::cyclic(4)).unwrap());
        assert!(is_g_torsor(&alg("-2,0,1"), &PermGroup::cyclic(3)).is_err());
    }
}
