use galcoh::etalealg::{cubic_resolvent, galois_group, quadratic_resolvent, EtaleAlgebra};
use galcoh::exactpoly::{discriminant, factor_rationals, numeric_roots, product, resultant, RationalPoly};
use galcoh::groupcoh::named_group;
use galcoh::kummerh1::{c3_add, c3_encode, random_norm_one, random_v4_delta, tate_dual_twist, v4_encode, CoclassC3, CoclassV4};
use galcoh::permstruct::{all_perms, count_g_structures, stable_partitions, all_partitions, Partition, Perm, PermGroup};
use galcoh::etalealg::SquareClass;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> RationalPoly {
    RationalPoly::parse(s).unwrap()
}

const IRREDUCIBLES: [&str; 9] =
    ["-3,1", "2,1", "-2,0,1", "1,0,1", "1,1,1", "-2,0,0,1", "-1,-1,0,1", "1,0,0,0,1", "-3,0,1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factors_multiply_back(picks in prop::collection::vec(0usize..9, 1..5), lead in 1i64..7) {
        let parts: Vec<RationalPoly> = picks.iter().map(|&i| p(IRREDUCIBLES[i])).collect();
        let f = product(&parts).scale(&galcoh::exactpoly::rat(lead));
        let fs = factor_rationals(&f).unwrap();
        let mut rebuilt = RationalPoly::one();
        for (g, m) in &fs {
            prop_assert!(g.is_monic());
            rebuilt = &rebuilt * &g.pow(*m as u32);
        }
        prop_assert_eq!(rebuilt, f.monic());
        let total: usize = fs.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, picks.len());
    }

    #[test]
    fn discriminant_of_product(
        a in prop::collection::vec(-6i64..6, 1..4),
        b in prop::collection::vec(-6i64..6, 1..4),
    ) {
        let f = RationalPoly::from_ints(&[a.as_slice(), &[1]].concat());
        let g = RationalPoly::from_ints(&[b.as_slice(), &[1]].concat());
        let r = resultant(&f, &g).unwrap();
        prop_assume!(r != galcoh::exactpoly::rat(0));
        let lhs = discriminant(&(&f * &g)).unwrap();
        prop_assert_eq!(lhs, discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r);
    }

    #[test]
    fn refined_roots_nest(a in prop::collection::vec(-9i64..9, 2..6)) {
        let f = RationalPoly::from_ints(&[a.as_slice(), &[1]].concat());
        prop_assume!(f.is_squarefree());
        let coarse = numeric_roots(&f, 64).unwrap();
        let fine = numeric_roots(&f, 128).unwrap();
        prop_assert_eq!(coarse.len(), fine.len());
        for z in &fine {
            prop_assert!(coarse.iter().any(|c| c.contains(z)), "{:?} escapes", z);
        }
    }

    #[test]
    fn quartic_resolvent_patterns(a in prop::collection::vec(-8i64..8, 4)) {
        let f = RationalPoly::from_ints(&[a.as_slice(), &[1]].concat());
        prop_assume!(f.is_squarefree());
        let l = EtaleAlgebra::from_poly(&f).unwrap();
        let r = cubic_resolvent(&f).unwrap();
        prop_assert_eq!(quadratic_resolvent(&r).unwrap(), quadratic_resolvent(&l).unwrap());
        if l.is_field() {
            let mut degs = r.factor_degrees();
            degs.sort();
            let want: Vec<usize> = match galois_group(&l).unwrap().label.as_str() {
                "V4" => vec![1, 1, 1],
                "C4" | "D4" => vec![1, 2],
                _ => vec![3],
            };
            prop_assert_eq!(degs, want);
        }
    }

    #[test]
    fn structure_counts_are_conjugation_invariant(img in 0usize..5, grp in 0usize..4, s in 0usize..24) {
        let images = ["C4", "V4", "S4", "A4", "1:"];
        let groups = ["C4", "D4", "S4", "V4"];
        let image = if images[img] == "1:" { PermGroup::trivial(4) } else { named_group(images[img]).unwrap() };
        let g = named_group(groups[grp]).unwrap();
        let sigma = all_perms(4)[s].clone();
        let a = count_g_structures(&image, &g).unwrap().count;
        let b = count_g_structures(&image.conjugate_by(&sigma), &g.conjugate_by(&sigma)).unwrap().count;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn c3_addition_commutes(seed in any::<u64>(), di in 0usize..6) {
        let d = SquareClass::from_int([2, -1, 5, 7, -7, 13][di]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = tate_dual_twist(&d);
        let x = CoclassC3::new(d.clone(), random_norm_one(&t, &mut rng)).unwrap();
        let y = CoclassC3::new(d.clone(), random_norm_one(&t, &mut rng)).unwrap();
        let xy = c3_encode(&c3_add(&x, &y).unwrap()).unwrap();
        let yx = c3_encode(&c3_add(&y, &x).unwrap()).unwrap();
        prop_assert!(xy.is_isomorphic(&yx).unwrap());
    }
}

fn block_image_is_block(part: &Partition, g: &Perm) -> bool {
    part.blocks.iter().all(|b| {
        let mut img: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
        img.sort_unstable();
        part.blocks.contains(&img)
    })
}

#[test]
fn stable_partitions_are_exactly_the_stable_ones() {
    for name in ["C3", "S3", "C4", "V4", "D4", "A4", "S4", "C5", "D5", "C6"] {
        let h = named_group(name).unwrap();
        let returned: Vec<Partition> = stable_partitions(&h).unwrap().into_iter().map(|s| s.partition).collect();
        for part in all_partitions(h.degree()) {
            let stable = h.elements().iter().all(|g| block_image_is_block(&part, g));
            assert_eq!(stable, returned.contains(&part), "{name}: {part:?}");
        }
    }
}

#[test]
fn v4_encoding_keeps_the_discriminant_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for r in ["-2,0,0,1", "1,-3,0,1", "-1,-1,0,1", "0,-2,0,1", "-6,11,-6,1"] {
        let r = EtaleAlgebra::from_poly(&p(r)).unwrap();
        for _ in 0..4 {
            let cc = CoclassV4::new(r.clone(), random_v4_delta(&r, &mut rng)).unwrap();
            assert_eq!(v4_encode(&cc).unwrap().disc_class(), r.disc_class());
        }
    }
}
