use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::algebra::{EtaleAlgebra, SquareClass};
use crate::error::{invalid, unsupported, Error, Result};
use crate::exactpoly::zmod::{self, Zp};
use crate::exactpoly::{discriminant, factor_degrees_over, rat, BigInt, BigRational, RationalPoly};
use crate::permstruct::{Perm, PermGroup};

/// Square class of the discriminant of L.
pub fn quadratic_resolvent(l: &EtaleAlgebra) -> Result<SquareClass> {
    if l.degree() < 2 {
        return invalid("quadratic resolvent needs degree at least 2");
    }
    Ok(l.disc_class())
}

/// Coefficients `(p, q, r)` of the depressed form `x^4 + p x^2 + q x + r` of a quartic.
pub fn depress_quartic(f: &RationalPoly) -> Result<(BigRational, BigRational, BigRational)> {
    if f.degree() != 4 {
        return invalid(format!("expected a quartic, got degree {}", f.degree()));
    }
    let g = f.monic();
    let shift = -g.coeff(3) / rat(4);
    let h = g.affine_subst(&rat(1), &shift);
    Ok((h.coeff(2), h.coeff(1), h.coeff(0)))
}

/// `x^3 - p x^2 - 4 r x + (4 p r - q^2)` for the depressed form of f.
pub fn cubic_resolvent_poly(f: &RationalPoly) -> Result<RationalPoly> {
    let (p, q, r) = depress_quartic(f)?;
    let c0 = rat(4) * &p * &r - &q * &q;
    Ok(RationalPoly::new(vec![c0, -rat(4) * r, -p, rat(1)]))
}

/// Cubic resolvent algebra of a separable quartic.
pub fn cubic_resolvent(f: &RationalPoly) -> Result<EtaleAlgebra> {
    if f.degree() != 4 {
        return invalid(format!("expected a quartic, got degree {}", f.degree()));
    }
    if !f.is_squarefree() {
        return Err(Error::NotEtale(format!("{} has a repeated factor", f.pretty())));
    }
    EtaleAlgebra::from_poly(&cubic_resolvent_poly(f)?)
}

/// Galois group of an etale algebra of degree at most 4, as a permutation group
/// on the roots listed factor by factor.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisTag {
    pub label: String,
    pub order: usize,
    pub transitive: bool,
    pub group: PermGroup,
}

fn cyc(n: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(n, cs).expect("valid cycle")
}

/// Standard transitive subgroup with the given label.
pub fn transitive_group(label: &str) -> Result<PermGroup> {
    let gens = match label {
        "C1" => return Ok(PermGroup::trivial(1)),
        "C2" => vec![cyc(2, &[&[0, 1]])],
        "C3" => vec![cyc(3, &[&[0, 1, 2]])],
        "S3" => return PermGroup::symmetric(3),
        "C4" => vec![cyc(4, &[&[0, 1, 2, 3]])],
        "V4" => vec![cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
        "D4" => vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])],
        "A4" => vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])],
        "S4" => return PermGroup::symmetric(4),
        _ => return invalid(format!("unknown transitive label {label}")),
    };
    let n = gens[0].degree();
    PermGroup::generate(n, gens)
}

fn shift_perm(p: &Perm, offset: usize, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for (i, &j) in p.images().iter().enumerate() {
        images[offset + i] = offset + j;
    }
    Perm::new(images).expect("block embedding")
}

fn field_label(f: &RationalPoly) -> Result<&'static str> {
    Ok(match f.degree() {
        1 => "C1",
        2 => "C2",
        3 => {
            if disc_is_square(f) {
                "C3"
            } else {
                "S3"
            }
        }
        4 => quartic_field_label(f)?,
        d => return unsupported(format!("Galois groups of degree {d} fields")),
    })
}

fn disc_is_square(f: &RationalPoly) -> bool {
    let d = discriminant(f).expect("separable");
    SquareClass::from_rational(&d).map(|c| c.is_trivial()).unwrap_or(false)
}

fn quartic_field_label(f: &RationalPoly) -> Result<&'static str> {
    let res = cubic_resolvent(f)?;
    let linear = res.h0_count();
    Ok(match linear {
        0 => {
            if disc_is_square(f) {
                "A4"
            } else {
                "S4"
            }
        }
        3 => "V4",
        1 => {
            // f stays irreducible over Q(sqrt disc) exactly for D4
            let d = SquareClass::from_rational(&discriminant(f)?)?;
            if factor_degrees_over(f, &d.quadratic_poly())? == vec![4] {
                "D4"
            } else {
                "C4"
            }
        }
        _ => return invalid("cubic resolvent has an impossible factor pattern"),
    })
}

/// Galois group of L for `deg L <= 4`.
pub fn galois_group(l: &EtaleAlgebra) -> Result<GaloisTag> {
    let n = l.degree();
    if n > 4 {
        return unsupported(format!("Galois identification is limited to degree 4, got {n}"));
    }
    let fs = l.factors();
    if fs.len() == 1 {
        let label = field_label(&fs[0])?;
        let group = transitive_group(label)?;
        return Ok(GaloisTag { label: label.to_string(), order: group.order(), transitive: true, group });
    }
    let degs = l.factor_degrees();
    let mut offsets = Vec::new();
    let mut acc = 0;
    for d in &degs {
        offsets.push(acc);
        acc += d;
    }
    let nontrivial: Vec<usize> = (0..fs.len()).filter(|&i| degs[i] > 1).collect();
    let partition = {
        let mut ds = degs.clone();
        ds.sort_by(|a, b| b.cmp(a));
        ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("+")
    };
    let (label, gens): (String, Vec<Perm>) = match nontrivial.len() {
        0 => ("C1".into(), vec![]),
        1 => {
            let i = nontrivial[0];
            let lab = field_label(&fs[i])?;
            let g = transitive_group(lab)?;
            (lab.into(), g.generators().iter().map(|p| shift_perm(p, offsets[i], n)).collect())
        }
        _ => {
            // two quadratic factors
            let (i, j) = (nontrivial[0], nontrivial[1]);
            let swap = cyc(2, &[&[0, 1]]);
            let a = shift_perm(&swap, offsets[i], n);
            let b = shift_perm(&swap, offsets[j], n);
            let di = EtaleAlgebra::from_factors(&[fs[i].clone()])?.disc_class();
            let dj = EtaleAlgebra::from_factors(&[fs[j].clone()])?.disc_class();
            if di == dj {
                ("C2".into(), vec![a.compose(&b)])
            } else {
                ("C2xC2".into(), vec![a, b])
            }
        }
    };
    let group = if gens.is_empty() { PermGroup::trivial(n) } else { PermGroup::generate(n, gens)? };
    Ok(GaloisTag { label: format!("{label}[{partition}]"), order: group.order(), transitive: false, group })
}

fn mod_p(f: &RationalPoly, p: u64) -> Option<Zp> {
    let ints = f.primitive_integer();
    let pb = BigInt::from(p);
    let zp: Zp = ints.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    let zp = zmod::trim(zp);
    if zp.len() != ints.len() {
        return None;
    }
    Some(zmod::monic(&zp, p))
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Frobenius cycle types `(p, type)` at the first `nprimes` primes not dividing
/// the leading coefficient or discriminant of f.
pub fn frobenius_cycle_types(f: &RationalPoly, nprimes: usize) -> Result<Vec<(u64, Vec<usize>)>> {
    if f.degree() == 0 {
        return invalid("constant polynomial");
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::NotEtale(format!("{} has a repeated factor", f.pretty())));
    }
    let ints = f.primitive_integer();
    let bad = ints.last().unwrap() * disc.numer() * disc.denom();
    let bad = bad.abs();
    let mut out = Vec::new();
    let mut p = 1u64;
    while out.len() < nprimes {
        p += 1;
        if !is_small_prime(p) || (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        let Some(fp) = mod_p(f, p) else { continue };
        let mut ty = Vec::new();
        for (g, d) in zmod::distinct_degree(&fp, p) {
            let k = zmod::deg(&g) as usize / d;
            ty.extend(std::iter::repeat_n(d, k));
        }
        ty.sort_unstable_by(|a, b| b.cmp(a));
        out.push((p, ty));
    }
    Ok(out)
}

/// Every sampled Frobenius cycle type occurs in the tagged group.
pub fn frobenius_consistent(f: &RationalPoly, tag: &GaloisTag, nprimes: usize) -> Result<bool> {
    let profile: BTreeSet<Vec<usize>> = tag.group.cycle_type_profile().into_iter().collect();
    Ok(frobenius_cycle_types(f, nprimes)?.iter().all(|(_, t)| profile.contains(t)))
}

/// `x^4 + x^3 + x^2 + x + 1`, `x^4 - 10x^2 + 1`, `x^4 + x + 1`, `x^4 - 6x^2 + 7`.
pub fn reference_quartics() -> Vec<(RationalPoly, &'static str)> {
    vec![
        (RationalPoly::from_ints(&[1, 1, 1, 1, 1]), "C4"),
        (RationalPoly::from_ints(&[1, 0, -10, 0, 1]), "V4"),
        (RationalPoly::from_ints(&[1, 1, 0, 0, 1]), "S4"),
        (RationalPoly::from_ints(&[7, 0, -6, 0, 1]), "D4"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::numeric_roots;

    fn p(s: &str) -> RationalPoly {
        RationalPoly::parse(s).unwrap()
    }

    #[test]
    fn resolvent_formula() {
        assert_eq!(cubic_resolvent_poly(&p("1,1,0,0,1")).unwrap(), p("-1,-4,0,1"));
        assert_eq!(cubic_resolvent_poly(&p("1,0,-10,0,1")).unwrap(), p("-40,-4,10,1"));
        let r = cubic_resolvent(&p("7,0,-6,0,1")).unwrap();
        assert_eq!(r.h0_count(), 1);
        assert_eq!(r.factor_degrees(), vec![1, 2]);
        assert!(cubic_resolvent(&p("1,0,1")).is_err());
    }

    #[test]
    fn resolvent_roots_are_pair_sums() {
        let f = p("1,1,0,0,1");
        let th = numeric_roots(&f, 128).unwrap();
        let rs = numeric_roots(&cubic_resolvent_poly(&f).unwrap(), 128).unwrap();
        let z: Vec<(f64, f64)> = th.iter().map(|b| (b.re_f64(), b.im_f64())).collect();
        let m = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let s1 = m(z[a], z[b]);
            let s2 = m(z[c], z[d]);
            let s = (s1.0 + s2.0, s1.1 + s2.1);
            assert!(rs.iter().any(|r| {
                let (x, y) = (r.re_f64(), r.im_f64());
                (x - s.0).abs() + (y - s.1).abs() < 1e-9
            }));
        }
    }

    #[test]
    fn reference_labels() {
        for (f, lab) in reference_quartics() {
            let tag = galois_group(&EtaleAlgebra::from_poly(&f).unwrap()).unwrap();
            assert_eq!(tag.label, lab);
            assert!(frobenius_consistent(&f, &tag, 50).unwrap());
        }
        let cubic = galois_group(&EtaleAlgebra::from_poly(&p("-1,-3,0,1")).unwrap()).unwrap();
        assert_eq!((cubic.label.as_str(), cubic.order), ("C3", 3));
        let s3 = galois_group(&EtaleAlgebra::from_poly(&p("-2,0,0,1")).unwrap()).unwrap();
        assert_eq!(s3.order, 6);
    }

    #[test]
    fn intransitive_labels() {
        let lab = |s: &str| galois_group(&EtaleAlgebra::from_poly(&p(s)).unwrap()).unwrap().label;
        // x(x^3 - 2)
        assert_eq!(lab("0,-2,0,0,1"), "S3[3+1]");
        // (x^2-2)(x^2-8) has repeated field, use (x^2-2)(x^2-2x-1)
        let diag = EtaleAlgebra::from_factors(&[p("-2,0,1"), p("-1,-2,1")]).unwrap();
        assert_eq!(galois_group(&diag).unwrap().label, "C2[2+2]");
        assert_eq!(lab("6,0,-5,0,1"), "C2xC2[2+2]");
        assert_eq!(lab("0,-2,0,1"), "C2[2+1]");
        assert_eq!(galois_group(&EtaleAlgebra::split(4)).unwrap().label, "C1[1+1+1+1]");
    }

    #[test]
    fn degree_above_four_is_unsupported() {
        let e = galois_group(&EtaleAlgebra::from_poly(&p("-2,0,0,0,0,1")).unwrap()).unwrap_err();
        assert!(e.is_unsupported());
    }

    #[test]
    fn frobenius_types_have_full_degree() {
        for (p, t) in frobenius_cycle_types(&p("1,1,0,0,1"), 20).unwrap() {
            assert_eq!(t.iter().sum::<usize>(), 4, "p = {p}");
        }
    }
}
