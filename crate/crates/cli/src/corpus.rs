//! Corpus runners. Each suite checks one family of properties against an
//! independent oracle and reports the failing cases by label.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use galcoh::error::{Error, Result};
use galcoh::etalealg::{
    cubic_resolvent, cubic_resolvent_poly, fields_isomorphic, frobenius_cycle_types, galois_group, mirror_quartic,
    quadratic_resolvent, transitive_group, EtaleAlgebra, SquareClass,
};
use galcoh::exactpoly::{
    discriminant, factor_degrees_over, frac, has_root_in_extension, rat, rational_cbrt, tensor_factors, BigRational,
    RationalPoly,
};
use galcoh::groupcoh::{chi_instance, h1_via_hol, lemma53_check, named_abelian, named_module, random_lemma53_instance, FiniteGModule};
use galcoh::kummerh1::{
    c3_decode, c3_encode, c3_add, c3_sum_check, c4_decode, c4_encode, random_c4_datum, random_norm_one, random_v4_delta,
    tate_dual_twist, v4_decode, v4_encode, CoclassC3, CoclassC4, CoclassV4, QuadElem,
};
use galcoh::localsym::{conic_has_point, hilbert2_classes, product_formula, square_classes, v4_split_report, C3Local, Place};
use galcoh::permstruct::{count_g_structures, factorial, holomorph, PermGroup};
use galcoh::permstruct::Elem;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

type SuiteFn = fn(&mut Ctx) -> Result<()>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("mirror", mirror),
    ("c4-codec", c4_codec),
    ("roundtrip", roundtrip),
    ("resolvents", resolvents),
    ("group-law", group_law),
    ("hilbert", hilbert),
    ("tate", tate),
    ("h1-bijection", h1_bijection),
    ("lemma53", lemma53),
    ("galois", galois),
    ("structures", structures),
];

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub details: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Ctx {
    rng: ChaCha8Rng,
    bits: u32,
    cases: usize,
    failed: usize,
    failures: Vec<String>,
    details: serde_json::Map<String, Value>,
}

impl Ctx {
    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(label());
            }
        }
    }

    fn note(&mut self, key: &str, v: Value) {
        self.details.insert(key.to_string(), v);
    }
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str, seed: u64, bits: u32) -> Result<SuiteReport> {
    let f = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
        .ok_or_else(|| Error::InvalidInput(format!("unknown suite '{name}'; known: {}", suite_names().join(", "))))?;
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        bits,
        cases: 0,
        failed: 0,
        failures: Vec::new(),
        details: serde_json::Map::new(),
    };
    let start = Instant::now();
    f(&mut ctx)?;
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        passed: ctx.failed == 0 && ctx.cases > 0,
        cases: ctx.cases,
        failed: ctx.failed,
        failures: ctx.failures,
        details: Value::Object(ctx.details),
        elapsed: start.elapsed(),
    })
}

fn p(s: &str) -> RationalPoly {
    RationalPoly::parse(s).expect("valid literal")
}

fn cls(n: i64) -> SquareClass {
    SquareClass::from_int(n).expect("nonzero")
}

const DISCS: [i64; 14] = [-1, 2, -2, 3, -3, 5, -5, 6, -7, 7, 10, -11, 13, 14];

fn mirror(ctx: &mut Ctx) -> Result<()> {
    let f = p("7,0,-6,0,1");
    let m = mirror_quartic(&f)?;
    ctx.check(m.to_text() == "8,0,-12,0,1", || format!("mirror is {}", m.to_text()));
    // (y^2 - 6)^2 - 28, the minimal polynomial of sqrt(6 + 2 sqrt 7)
    let y2 = &(&RationalPoly::monomial(rat(1), 2) - &RationalPoly::constant(rat(6)));
    let target = &(y2 * y2) - &RationalPoly::constant(rat(28));
    ctx.check(has_root_in_extension(&m, &target)?, || "mirror has no root in Q[sqrt(6+2sqrt7)]".into());
    ctx.check(has_root_in_extension(&target, &m)?, || "Q[sqrt(6+2sqrt7)] does not embed in the mirror".into());
    // the closure Q[sqrt(3+sqrt2), sqrt7]
    let octic = tensor_factors(&f, &p("-7,0,1"))?;
    let single = octic.len() == 1 && octic[0].degree() == 8;
    ctx.check(single, || format!("L (x) Q[sqrt7] has factors {:?}", octic.iter().map(|g| g.to_text()).collect::<Vec<_>>()));
    if single {
        for g in [&f, &m] {
            let degs = factor_degrees_over(g, &octic[0])?;
            ctx.check(degs == vec![1, 1, 1, 1], || format!("{} splits as {degs:?} over the closure", g.to_text()));
        }
        ctx.note("closure", json!(octic[0].to_text()));
    }
    ctx.note("mirror", json!(m.to_text()));
    Ok(())
}

fn c4_codec(ctx: &mut Ctx) -> Result<()> {
    let cc = CoclassC4::from_abc(cls(14), frac(-5, 4), frac(1, 2), frac(3, 2))?;
    let l = c4_encode(&cc)?;
    ctx.check(l.factor_strings() == vec!["7,0,-6,0,1".to_string()], || format!("encode gave {:?}", l.factor_strings()));
    let dec = c4_decode(&l)?;
    let a = &dec.coclass.alpha;
    let ok = dec.coclass.d == cls(14)
        && a.x == frac(-5, 4)
        && (a.y == frac(1, 2) || a.y == frac(-1, 2))
        && dec.coclass.c == frac(3, 2);
    ctx.check(ok, || format!("decode gave {:?}", dec.coclass));
    ctx.check(dec.sign_ambiguous, || "decode did not flag the b-sign".into());
    for d in [2, 3, 5, 14] {
        let cc = CoclassC4::from_abc(cls(d), rat(-4), rat(0), rat(2))?;
        let l = c4_encode(&cc)?;
        let quad = cls(d).quadratic_poly();
        let mut ok = l.factor_degrees() == vec![2, 2];
        for g in l.factors() {
            ok &= fields_isomorphic(g, &quad)?;
        }
        ctx.check(ok, || format!("(-4, 2) at D = {d} gave {:?}", l.factor_strings()));
    }
    Ok(())
}

fn c3_cube_ratio(a: &QuadElem, b: &QuadElem) -> Result<bool> {
    for e in [b.clone(), b.conj()] {
        let z = a.mul(&e.inv().expect("norm one"));
        let cube = if z.y == rat(0) {
            rational_cbrt(&z.x).is_some()
        } else if z.disc.is_trivial() {
            rational_cbrt(&(&z.x + &z.y)).is_some() && rational_cbrt(&(&z.x - &z.y)).is_some()
        } else {
            // y^6 - tr(z) y^3 + N(z) is the norm of y^3 - z
            let sextic = RationalPoly::new(vec![z.norm(), rat(0), rat(0), -z.trace(), rat(0), rat(0), rat(1)]);
            has_root_in_extension(&sextic, &z.disc.quadratic_poly())?
        };
        if cube {
            return Ok(true);
        }
    }
    Ok(false)
}

fn random_c3(rng: &mut ChaCha8Rng) -> Result<CoclassC3> {
    let d = cls(*DISCS.choose(rng).unwrap());
    let delta = random_norm_one(&tate_dual_twist(&d), rng);
    CoclassC3::new(d, delta)
}

fn random_cubic_algebra(rng: &mut ChaCha8Rng) -> Result<EtaleAlgebra> {
    loop {
        let cs: Vec<i64> = vec![rng.gen_range(-6..=6), rng.gen_range(-6..=6), rng.gen_range(-3..=3), 1];
        let f = RationalPoly::from_ints(&cs);
        if f.is_squarefree() {
            return EtaleAlgebra::from_poly(&f);
        }
    }
}

fn random_v4(rng: &mut ChaCha8Rng) -> Result<CoclassV4> {
    let r = random_cubic_algebra(rng)?;
    let delta = random_v4_delta(&r, rng);
    CoclassV4::new(r, delta)
}

fn roundtrip(ctx: &mut Ctx) -> Result<()> {
    for i in 0..50 {
        let cc = random_c3(&mut ctx.rng)?;
        let l = c3_encode(&cc)?;
        let dec = c3_decode(&l)?.coclass;
        let back = c3_encode(&dec)?;
        let ok = back.is_isomorphic(&l)? && dec.d == cc.d && c3_cube_ratio(&dec.delta, &cc.delta)?;
        ctx.check(ok, || format!("c3 #{i}: {cc:?}"));
    }
    for i in 0..50 {
        let cc = random_v4(&mut ctx.rng)?;
        let l = v4_encode(&cc)?;
        let back = v4_encode(&v4_decode(&l.presentation())?)?;
        ctx.check(back.is_isomorphic(&l)?, || format!("v4 #{i}: {:?}", l.factor_strings()));
    }
    for i in 0..50 {
        let d = cls(*DISCS.choose(&mut ctx.rng).unwrap());
        let cc = random_c4_datum(&d, &mut ctx.rng);
        let l = c4_encode(&cc)?;
        let back = c4_encode(&c4_decode(&l)?.coclass)?;
        ctx.check(back.is_isomorphic(&l)?, || format!("c4 #{i}: {cc:?}"));
    }
    Ok(())
}

fn random_squarefree_quartic(rng: &mut ChaCha8Rng) -> RationalPoly {
    loop {
        let cs: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).chain([1]).collect();
        let f = RationalPoly::from_ints(&cs);
        if f.is_squarefree() {
            return f;
        }
    }
}

fn resolvents(ctx: &mut Ctx) -> Result<()> {
    for i in 0..100 {
        let cc = random_c3(&mut ctx.rng)?;
        let q = quadratic_resolvent(&c3_encode(&cc)?)?;
        ctx.check(q == cc.d, || format!("c3 #{i}: D = {} but resolvent {q}", cc.d));
    }
    for i in 0..50 {
        let cc = random_v4(&mut ctx.rng)?;
        let l = v4_encode(&cc)?;
        let r = cubic_resolvent(&l.presentation())?;
        ctx.check(r.is_isomorphic(&cc.r)?, || format!("v4 #{i}: R = {:?}, resolvent {:?}", cc.r.factor_strings(), r.factor_strings()));
    }
    for i in 0..100 {
        let f = random_squarefree_quartic(&mut ctx.rng);
        let a = SquareClass::from_rational(&discriminant(&f)?)?;
        let b = SquareClass::from_rational(&discriminant(&cubic_resolvent_poly(&f)?)?)?;
        ctx.check(a == b, || format!("quartic #{i} {}: {a} vs {b}", f.to_text()));
    }
    Ok(())
}

fn group_law(ctx: &mut Ctx) -> Result<()> {
    let mut worst = f64::NEG_INFINITY;
    let mut i = 0;
    while i < 25 {
        let a = random_c3(&mut ctx.rng)?;
        let delta = random_norm_one(&a.delta.disc, &mut ctx.rng);
        let b = CoclassC3::new(a.d.clone(), delta)?;
        if a.is_degenerate() || b.is_degenerate() || c3_add(&a, &b)?.is_degenerate() {
            continue;
        }
        let r = c3_sum_check(&a, &b, ctx.bits)?;
        worst = worst.max(r.max_radius_log2);
        ctx.check(r.matched && r.max_radius_log2 <= -64.0, || format!("pair #{i}: {r:?}"));
        i += 1;
    }
    ctx.note("max_radius_log2_below_minus_64", json!(worst <= -64.0));
    Ok(())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let n = rng.gen_range(-400i64..=400);
        if n != 0 {
            return frac(n, rng.gen_range(1..=40));
        }
    }
}

fn hilbert(ctx: &mut Ctx) -> Result<()> {
    let places = [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Finite(7), Place::Finite(13), Place::Real];
    let mut sizes = Vec::new();
    for v in places {
        let cs = square_classes(v)?;
        sizes.push(json!({"place": v.to_string(), "classes": cs.len()}));
        for a in &cs {
            for b in &cs {
                let h = hilbert2_classes(a, b)?.is_one();
                let c = conic_has_point(&a.rep_rational(), &b.rep_rational(), v)?;
                ctx.check(h == c, || format!("({a}, {b}) at {v}"));
            }
        }
    }
    ctx.note("square_classes", json!(sizes));
    for _ in 0..50 {
        let (a, b) = (random_rational(&mut ctx.rng), random_rational(&mut ctx.rng));
        let ok = product_formula(&a, &b)?.is_one();
        ctx.check(ok, || format!("product formula fails for ({a}, {b})"));
    }
    Ok(())
}

fn tate(ctx: &mut Ctx) -> Result<()> {
    let loc = C3Local::new(7, &SquareClass::one())?;
    let r = loc.report(&mut ctx.rng)?;
    ctx.check(r.rows == 9 && r.cols == 9 && r.passed(), || format!("c3 at 7: {}x{} {:?}", r.rows, r.cols, (r.bilinear, r.nondegenerate, r.well_defined)));
    for q in [3, 5, 7] {
        let r = v4_split_report(Place::Finite(q), &mut ctx.rng)?;
        ctx.check(r.passed(), || format!("v4 at {q}: {:?}", (r.bilinear, r.nondegenerate, r.well_defined)));
        ctx.note(&format!("v4_{q}"), json!({"rows": r.rows, "cols": r.cols}));
    }
    Ok(())
}

/// |H^1| as |Z^1| / |B^1| by enumerating every function G -> M.
pub fn brute_h1(gm: &FiniteGModule) -> usize {
    let m = &gm.module;
    let elems = m.elements();
    let n = gm.order();
    let mut z1 = 0usize;
    let mut f = vec![0usize; n];
    loop {
        let val = |g: usize| &elems[f[g]];
        let cocycle = (0..n).all(|g| (0..n).all(|h| *val(gm.mul(g, h)) == m.add(val(g), &gm.act(g, val(h)))));
        if cocycle {
            z1 += 1;
        }
        let mut k = 0;
        while k < n {
            f[k] += 1;
            if f[k] < elems.len() {
                break;
            }
            f[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    let b1: BTreeSet<Vec<Elem>> =
        elems.iter().map(|x| (0..n).map(|g| m.sub(&gm.act(g, x), x)).collect()).collect();
    z1 / b1.len()
}

fn h1_bijection(ctx: &mut Ctx) -> Result<()> {
    let cases = [("C2", "C2", "triv", 2), ("S3", "C3", "sign", 3), ("S3", "C2xC2", "perm", 1), ("C2", "C4", "inversion", 2)];
    let mut sizes = Vec::new();
    for (g, m, act, expected) in cases {
        let gm = named_module(g, m, act)?;
        let r = h1_via_hol(&gm)?;
        let brute = brute_h1(&gm);
        let ok = r.bijective && r.h1_order == r.classes.len() && r.h1_order == brute && brute == expected;
        ctx.check(ok, || format!("({g}, {m}, {act}): linear {} hol {} brute {brute}", r.h1_order, r.classes.len()));
        sizes.push(json!({"case": format!("{g},{m},{act}"), "h1": r.h1_order}));
    }
    ctx.note("h1_orders", json!(sizes));
    Ok(())
}

fn lemma53(ctx: &mut Ctx) -> Result<()> {
    let mut insts: Vec<_> = (0..100).map(|_| random_lemma53_instance(&mut ctx.rng)).collect();
    for which in 0..3 {
        for n in 0..2 {
            insts.push(chi_instance(which, n));
        }
    }
    let mut classes = 0;
    for inst in &insts {
        let out = lemma53_check(&inst.x, &inst.y, &inst.h, &inst.f, inst.n)?;
        classes += out.classes_checked;
        ctx.check(out.holds, || inst.label.clone());
    }
    ctx.note("classes_checked", json!(classes));
    Ok(())
}

const GALOIS_CURATED: [&str; 25] = [
    "1,1,1,1,1",
    "1,0,-10,0,1",
    "1,1,0,0,1",
    "7,0,-6,0,1",
    "2,0,-4,0,1",
    "2,0,4,0,1",
    "5,0,-5,0,1",
    "1,0,0,0,1",
    "-2,0,0,0,1",
    "1,0,1,0,1",
    "4,0,0,0,1",
    "8,0,-12,0,1",
    "1,0,-1,0,1",
    "-1,0,-1,0,1",
    "2,0,0,0,1",
    "-1,1,0,0,1",
    "3,0,0,0,1",
    "1,-1,0,0,1",
    "-2,2,0,0,1",
    "1,2,3,4,5",
    "-3,0,0,0,1",
    "5,0,10,0,1",
    "-5,0,0,0,1",
    "9,0,0,0,1",
    "2,8,0,0,1",
];

const QUARTIC_LABELS: [&str; 5] = ["C4", "V4", "D4", "A4", "S4"];
const FROBENIUS_PRIMES: usize = 400;

fn type_set(ts: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<Vec<usize>> {
    ts.into_iter()
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect()
}

fn galois_case(ctx: &mut Ctx, f: &RationalPoly, expect: Option<&str>) -> Result<String> {
    let l = EtaleAlgebra::from_poly(f)?;
    let tag = galois_group(&l)?;
    let seen = type_set(frobenius_cycle_types(f, FROBENIUS_PRIMES)?.into_iter().map(|(_, t)| t));
    let mut ok = seen == type_set(tag.group.elements().iter().map(|g| g.cycle_type()));
    if l.is_field() {
        let matches: Vec<&str> = QUARTIC_LABELS
            .iter()
            .copied()
            .filter(|lab| transitive_group(lab).map(|g| type_set(g.cycle_type_profile()) == seen).unwrap_or(false))
            .collect();
        ok &= matches == vec![tag.label.as_str()];
    }
    if let Some(e) = expect {
        ok &= tag.label == e;
    }
    ctx.check(ok, || format!("{} tagged {}", f.to_text(), tag.label));
    Ok(tag.label)
}

fn galois(ctx: &mut Ctx) -> Result<()> {
    let expected = [("1,1,1,1,1", "C4"), ("1,0,-10,0,1", "V4"), ("1,1,0,0,1", "S4"), ("7,0,-6,0,1", "D4")];
    let mut tags = serde_json::Map::new();
    for s in GALOIS_CURATED {
        let e = expected.iter().find(|(q, _)| *q == s).map(|(_, l)| *l);
        let lab = galois_case(ctx, &p(s), e)?;
        tags.insert(s.to_string(), json!(lab));
    }
    ctx.note("curated", Value::Object(tags));
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    for _ in 0..100 {
        // a mix of general and even quartics so the smaller groups show up
        let f = if ctx.rng.gen_bool(0.5) {
            random_squarefree_quartic(&mut ctx.rng)
        } else {
            loop {
                let (b, c) = (ctx.rng.gen_range(-12i64..=12), ctx.rng.gen_range(-12i64..=12));
                let f = RationalPoly::from_ints(&[c, 0, b, 0, 1]);
                if c != 0 && f.is_squarefree() {
                    break f;
                }
            }
        };
        let lab = galois_case(ctx, &f, None)?;
        *counts.entry(lab).or_default() += 1;
    }
    ctx.note("random_labels", json!(counts));
    Ok(())
}

fn brute_aut_count(m: &galcoh::permstruct::FiniteAbelian) -> usize {
    let elems = m.elements();
    let r = m.rank();
    let mut count = 0;
    let mut idx = vec![0usize; r];
    loop {
        let imgs: Vec<Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        if let Some(table) = m.hom_from_images(m, &imgs) {
            if table.iter().collect::<BTreeSet<_>>().len() == elems.len() {
                count += 1;
            }
        }
        let mut k = 0;
        while k < r {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == r {
            return count;
        }
    }
}

fn structures(ctx: &mut Ctx) -> Result<()> {
    let c4 = galcoh::groupcoh::named_group("C4")?;
    let s4 = PermGroup::symmetric(4)?;
    for (name, img, g, expected) in
        [("C4 in C4", &c4, &c4, 2), ("trivial in C4", &PermGroup::trivial(4), &c4, 6), ("S4 in S4", &s4, &s4, 1)]
    {
        let n = count_g_structures(img, g)?.count;
        ctx.check(n == expected, || format!("{name}: {n}"));
    }
    let mut full = Vec::new();
    let mut orders = serde_json::Map::new();
    for name in ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C2xC4", "C2xC2xC2"] {
        let m = named_abelian(name)?;
        let hol = holomorph(&m).group.order();
        let aut = brute_aut_count(&m);
        ctx.check(hol == m.order() * aut, || format!("|Hol {name}| = {hol}, |M| |Aut M| = {}", m.order() * aut));
        if hol == factorial(m.order()) {
            full.push(name);
        }
        orders.insert(name.to_string(), json!(hol));
    }
    ctx.check(full == vec!["C1", "C2", "C3", "C2xC2"], || format!("Hol = Sym for {full:?}"));
    ctx.note("holomorph_orders", Value::Object(orders));
    ctx.note("hol_is_sym", json!(full));
    Ok(())
}
