use galcoh::error::Result;
use galcoh::etalealg::{
    cubic_resolvent, galois_group, is_g_torsor, mirror_quartic, quadratic_resolvent, torsor_closure, EtaleAlgebra,
    SquareClass,
};
use galcoh::exactpoly::{discriminant, factor_rationals, format_rational, parse_rational, RationalPoly};
use galcoh::groupcoh::{cohomology, h1_via_hol, lemma53_check, named_abelian, named_group, named_module, random_lemma53_instance};
use galcoh::kummerh1::{
    c3_add, c3_decode, c3_encode, c3_sum_check, c4_add, c4_decode, c4_encode, tate_dual_twist, v4_add, v4_decode,
    v4_encode, CoclassC3, CoclassC4, CoclassV4, QuadElem,
};
use galcoh::localsym::{
    enumerate_h1_local, hilbert2, power_classes, tate_pair_c3, tate_pair_v4_split, v4_split_report, C3Local, LocalModule,
    Place,
};
use galcoh::permstruct::{centralizer_in_sym, count_g_structures, factorial, holomorph, stable_partitions};
use galcoh::{BigRational, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::*;
use crate::corpus;

pub fn poly(s: &str) -> Result<RationalPoly> {
    let f = RationalPoly::parse(s)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    Ok(f)
}

pub fn algebra(s: &str) -> Result<EtaleAlgebra> {
    let parts = s.split('|').map(poly).collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        EtaleAlgebra::from_poly(&parts[0])
    } else {
        EtaleAlgebra::from_factors(&parts)
    }
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s.trim())
}

fn class(s: &str) -> Result<SquareClass> {
    SquareClass::from_rational(&rational(s)?)
}

fn need<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::InvalidInput(format!("--{name} is required")))
}

fn rationals(s: &str, n: usize) -> Result<Vec<BigRational>> {
    let v = s.split(',').map(rational).collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} comma-separated values")));
    }
    Ok(v)
}

fn to_json<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// Name of the command, for the output envelope.
pub fn name(cmd: &Command) -> String {
    let s = match cmd {
        Command::Poly(PolyCmd::Factor(_)) => "poly factor",
        Command::Poly(PolyCmd::Disc(_)) => "poly disc",
        Command::Etale(EtaleCmd::Info(_)) => "etale info",
        Command::Etale(EtaleCmd::Mirror(_)) => "etale mirror",
        Command::Etale(EtaleCmd::Closure(_)) => "etale closure",
        Command::Etale(EtaleCmd::Torsor(_)) => "etale torsor",
        Command::Group(GroupCmd::Hol(_)) => "group hol",
        Command::Group(GroupCmd::Structures(_)) => "group structures",
        Command::Group(GroupCmd::Centralizer(_)) => "group centralizer",
        Command::Group(GroupCmd::Partitions(_)) => "group partitions",
        Command::Coh(CohCmd::H(_)) => "coh h",
        Command::Coh(CohCmd::HolH1(_)) => "coh hol-h1",
        Command::Coh(CohCmd::Lemma53(_)) => "coh lemma53",
        Command::H1(H1Cmd::C3(c)) => match c {
            C3Cmd::Encode(_) => "h1 c3 encode",
            C3Cmd::Decode(_) => "h1 c3 decode",
            C3Cmd::Add(_) => "h1 c3 add",
        },
        Command::H1(H1Cmd::V4(c)) => match c {
            V4Cmd::Encode(_) => "h1 v4 encode",
            V4Cmd::Decode(_) => "h1 v4 decode",
            V4Cmd::Add(_) => "h1 v4 add",
        },
        Command::H1(H1Cmd::C4(c)) => match c {
            C4Cmd::Encode(_) => "h1 c4 encode",
            C4Cmd::Decode(_) => "h1 c4 decode",
            C4Cmd::Add(_) => "h1 c4 add",
        },
        Command::Local(LocalCmd::Hilbert(_)) => "local hilbert",
        Command::Local(LocalCmd::Tate(_)) => "local tate",
        Command::Local(LocalCmd::H1(_)) => "local h1",
        Command::Local(LocalCmd::Classes(_)) => "local classes",
        Command::Corpus(CorpusCmd::Run(_)) => "corpus run",
        Command::Corpus(CorpusCmd::List) => "corpus list",
    };
    s.to_string()
}

/// Runs a parsed command. The boolean is false when a corpus suite failed.
pub fn dispatch(cli: &Cli) -> Result<(Value, bool)> {
    let bits = cli.precision_bits;
    let v = match &cli.command {
        Command::Poly(c) => poly_cmd(c)?,
        Command::Etale(c) => etale_cmd(c)?,
        Command::Group(c) => group_cmd(c)?,
        Command::Coh(c) => coh_cmd(c)?,
        Command::H1(c) => h1_cmd(c, bits)?,
        Command::Local(c) => local_cmd(c)?,
        Command::Corpus(CorpusCmd::List) => json!({ "suites": corpus::suite_names() }),
        Command::Corpus(CorpusCmd::Run(a)) => {
            let r = corpus::run_suite(&a.suite, a.seed, bits)?;
            let ok = r.passed;
            return Ok((to_json(&r), ok));
        }
    };
    Ok((v, true))
}

fn poly_cmd(c: &PolyCmd) -> Result<Value> {
    Ok(match c {
        PolyCmd::Factor(a) => {
            let f = poly(&a.f)?;
            let fs = factor_rationals(&f)?;
            json!({
                "input": f.to_text(),
                "factors": fs.iter().map(|(g, m)| json!({"factor": g.to_text(), "multiplicity": m})).collect::<Vec<_>>(),
            })
        }
        PolyCmd::Disc(a) => {
            let f = poly(&a.f)?;
            let d = discriminant(&f)?;
            let cls = if d == BigRational::from_integer(0.into()) { Value::Null } else { to_json(&SquareClass::from_rational(&d)?) };
            json!({ "input": f.to_text(), "discriminant": format_rational(&d), "disc_class": cls })
        }
    })
}

fn algebra_info(l: &EtaleAlgebra) -> Result<Value> {
    let tag = galois_group(l).ok();
    let mut res = json!({ "quadratic": to_json(&quadratic_resolvent(l)?) });
    if l.degree() == 4 {
        res["cubic"] = json!(cubic_resolvent(&l.presentation())?.factor_strings());
    }
    Ok(json!({
        "factors": l.factor_strings(),
        "degree": l.degree(),
        "disc_class": to_json(&l.disc_class()),
        "galois_tag": tag.map(|t| json!({"label": t.label, "order": t.order, "transitive": t.transitive})),
        "resolvents": res,
    }))
}

fn etale_cmd(c: &EtaleCmd) -> Result<Value> {
    Ok(match c {
        EtaleCmd::Info(a) => algebra_info(&algebra(&a.f)?)?,
        EtaleCmd::Mirror(a) => {
            let l = algebra(&a.f)?;
            if !l.is_field() {
                return Err(Error::Unsupported("mirror is implemented for quartic fields".into()));
            }
            let m = mirror_quartic(&l.factors()[0])?;
            let ml = EtaleAlgebra::from_poly(&m)?;
            json!({ "input": l.factor_strings(), "mirror": m.to_text(), "mirror_algebra": algebra_info(&ml)? })
        }
        EtaleCmd::Closure(a) => {
            let l = algebra(&a.f)?;
            let cl = torsor_closure(&l)?;
            json!({ "input": l.factor_strings(), "closure": cl.factor_strings(), "degree": cl.degree() })
        }
        EtaleCmd::Torsor(a) => {
            let l = algebra(&a.f)?;
            let g = named_group(&a.group)?;
            json!({ "input": l.factor_strings(), "group": to_json(&g), "is_torsor": is_g_torsor(&l, &g)? })
        }
    })
}

fn group_cmd(c: &GroupCmd) -> Result<Value> {
    Ok(match c {
        GroupCmd::Hol(a) => {
            let m = named_abelian(&a.module)?;
            let h = holomorph(&m);
            let n = m.order();
            json!({
                "module": m.label(),
                "degree": n,
                "order": h.group.order(),
                "aut_order": h.group.order() / n,
                "is_full_symmetric": h.group.order() == factorial(n),
                "group": to_json(&h.group),
            })
        }
        GroupCmd::Structures(a) => {
            let img = named_group(&a.image)?;
            let g = named_group(&a.group)?;
            to_json(&count_g_structures(&img, &g)?)
        }
        GroupCmd::Centralizer(a) => {
            let g = named_group(&a.group)?;
            json!({ "group": to_json(&g), "centralizer": to_json(&centralizer_in_sym(&g)?) })
        }
        GroupCmd::Partitions(a) => {
            let g = named_group(&a.group)?;
            json!({ "group": to_json(&g), "partitions": to_json(&stable_partitions(&g)?) })
        }
    })
}

fn coh_cmd(c: &CohCmd) -> Result<Value> {
    Ok(match c {
        CohCmd::H(a) => {
            let gm = named_module(&a.gm.group, &a.gm.module, &a.gm.action)?;
            let h = cohomology(&gm, a.n)?;
            json!({ "module": gm.describe(), "n": a.n, "order": h.order(), "classes": h.to_json(&gm) })
        }
        CohCmd::HolH1(a) => {
            let gm = named_module(&a.group, &a.module, &a.action)?;
            let r = h1_via_hol(&gm)?;
            json!({
                "module": gm.describe(),
                "h1_order": r.h1_order,
                "lifts": r.homs.len(),
                "hol_classes": r.classes.len(),
                "class_to_h1": r.to_h1,
                "bijective": r.bijective,
            })
        }
        CohCmd::Lemma53(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let mut failures = Vec::new();
            let mut classes = 0;
            for _ in 0..a.count {
                let inst = random_lemma53_instance(&mut rng);
                let out = lemma53_check(&inst.x, &inst.y, &inst.h, &inst.f, inst.n)?;
                classes += out.classes_checked;
                if !out.holds {
                    failures.push(inst.label);
                }
            }
            json!({ "instances": a.count, "classes_checked": classes, "holds": failures.is_empty(), "failures": failures })
        }
    })
}

fn c3_datum(d: &str, delta: &str) -> Result<CoclassC3> {
    let d = class(d)?;
    let delta = QuadElem::parse(tate_dual_twist(&d), delta)?;
    CoclassC3::new(d, delta)
}

fn c3_payload(cc: &CoclassC3, flags: Vec<&str>) -> Result<Value> {
    let l = c3_encode(cc)?;
    Ok(json!({
        "datum": to_json(cc),
        "cubic": cc.cubic().to_text(),
        "algebra_factors": l.factor_strings(),
        "resolvents": { "quadratic": to_json(&quadratic_resolvent(&l)?) },
        "flags": flags,
    }))
}

fn v4_datum(r: &str, delta: &str) -> Result<CoclassV4> {
    let r = algebra(r)?;
    let d = delta.split('|').map(poly).collect::<Result<Vec<_>>>()?;
    CoclassV4::new(r, d)
}

fn v4_payload(cc: &CoclassV4, flags: Vec<&str>) -> Result<Value> {
    let l = v4_encode(cc)?;
    Ok(json!({
        "datum": to_json(cc),
        "quartic": cc.quartic().to_text(),
        "algebra_factors": l.factor_strings(),
        "resolvents": { "cubic": cubic_resolvent(&l.presentation())?.factor_strings() },
        "flags": flags,
    }))
}

fn c4_datum(d: &str, a: &str, b: &str, c: &str) -> Result<CoclassC4> {
    CoclassC4::from_abc(class(d)?, rational(a)?, rational(b)?, rational(c)?)
}

fn c4_payload(cc: &CoclassC4, flags: Vec<&str>) -> Result<Value> {
    let l = c4_encode(cc)?;
    Ok(json!({
        "datum": to_json(cc),
        "algebra_factors": l.factor_strings(),
        "resolvents": { "quadratic": to_json(&quadratic_resolvent(&l)?) },
        "flags": flags,
    }))
}

fn h1_cmd(c: &H1Cmd, bits: u32) -> Result<Value> {
    Ok(match c {
        H1Cmd::C3(C3Cmd::Encode(a)) => c3_payload(&c3_datum(&a.d, &a.delta)?, vec![])?,
        H1Cmd::C3(C3Cmd::Decode(a)) => {
            let dec = c3_decode(&algebra(&a.f)?)?;
            c3_payload(&dec.coclass, if dec.sign_ambiguous { vec!["sign_ambiguous"] } else { vec![] })?
        }
        H1Cmd::C3(C3Cmd::Add(a)) => {
            let x = c3_datum(&a.d, &a.delta)?;
            let y = c3_datum(&a.d, need(&a.delta2, "delta2")?)?;
            let s = c3_add(&x, &y)?;
            let mut v = c3_payload(&s, vec![])?;
            if !x.is_degenerate() && !y.is_degenerate() && !s.is_degenerate() {
                v["sum_check"] = to_json(&c3_sum_check(&x, &y, bits)?);
            }
            v
        }
        H1Cmd::V4(V4Cmd::Encode(a)) => v4_payload(&v4_datum(&a.r, &a.delta)?, vec![])?,
        H1Cmd::V4(V4Cmd::Decode(a)) => {
            let l = algebra(&a.f)?;
            v4_payload(&v4_decode(&l.presentation())?, vec!["aut_orbit_ambiguous"])?
        }
        H1Cmd::V4(V4Cmd::Add(a)) => {
            let x = v4_datum(&a.r, &a.delta)?;
            let y = v4_datum(&a.r, need(&a.delta2, "delta2")?)?;
            v4_payload(&v4_add(&x, &y)?, vec![])?
        }
        H1Cmd::C4(C4Cmd::Encode(a)) => c4_payload(&c4_datum(&a.d, &a.a, &a.b, &a.c)?, vec![])?,
        H1Cmd::C4(C4Cmd::Decode(a)) => {
            let dec = c4_decode(&algebra(&a.f)?)?;
            c4_payload(&dec.coclass, if dec.sign_ambiguous { vec!["b_sign_ambiguous"] } else { vec![] })?
        }
        H1Cmd::C4(C4Cmd::Add(a)) => {
            let x = c4_datum(&a.d, &a.a, &a.b, &a.c)?;
            let y = c4_datum(&a.d, need(&a.a2, "a2")?, need(&a.b2, "b2")?, need(&a.c2, "c2")?)?;
            c4_payload(&c4_add(&x, &y)?, vec![])?
        }
    })
}

fn finite(place: Place) -> Result<u64> {
    match place {
        Place::Finite(p) => Ok(p),
        Place::Real => Err(Error::Unsupported("this pairing needs a finite place".into())),
    }
}

fn local_cmd(c: &LocalCmd) -> Result<Value> {
    Ok(match c {
        LocalCmd::Hilbert(a) => {
            let place = Place::parse(&a.p)?;
            json!({ "place": place.to_string(), "value": hilbert2(&rational(&a.a)?, &rational(&a.b)?, place)?.to_string() })
        }
        LocalCmd::Tate(a) => {
            let place = Place::parse(&a.p)?;
            match a.module.as_str() {
                "c3" => {
                    let p = finite(place)?;
                    let d = class(need(&a.d, "D")?)?;
                    let loc = C3Local::new(p, &d)?;
                    match (&a.sigma, &a.tau) {
                        (Some(s), Some(t)) => {
                            let sigma = CoclassC3::new(d.clone(), QuadElem::parse(tate_dual_twist(&d), s)?)?;
                            let tau = CoclassC3::new(tate_dual_twist(&d), QuadElem::parse(d.clone(), t)?)?;
                            json!({ "value": tate_pair_c3(p, &sigma, &tau)?.to_string() })
                        }
                        _ => {
                            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                            let r = loc.report(&mut rng)?;
                            let mut v = to_json(&r);
                            v["sigma_side"] = to_json(&loc.sigma_side);
                            v["tau_side"] = to_json(&loc.tau_side);
                            v
                        }
                    }
                }
                "v4" => match (&a.sigma, &a.tau) {
                    (Some(s), Some(t)) => {
                        let s = rationals(s, 3)?;
                        let t = rationals(t, 3)?;
                        let s = [s[0].clone(), s[1].clone(), s[2].clone()];
                        let t = [t[0].clone(), t[1].clone(), t[2].clone()];
                        json!({ "value": tate_pair_v4_split(place, &s, &t)?.to_string() })
                    }
                    _ => {
                        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                        to_json(&v4_split_report(place, &mut rng)?)
                    }
                },
                m => return Err(Error::InvalidInput(format!("unknown module '{m}'"))),
            }
        }
        LocalCmd::H1(a) => {
            let place = Place::parse(&a.p)?;
            let d = a.d.as_deref().map(class).transpose()?;
            let module = LocalModule::parse(&a.module, d.as_ref())?;
            let classes = enumerate_h1_local(&module, place)?;
            json!({ "count": classes.len(), "classes": to_json(&classes) })
        }
        LocalCmd::Classes(a) => {
            let place = Place::parse(&a.p)?;
            let cs = power_classes(place, a.m)?;
            json!({
                "count": cs.len(),
                "classes": cs.iter().map(|c| json!({"v": c.v, "unit": c.unit, "rep": c.rep().to_string()})).collect::<Vec<_>>(),
            })
        }
    })
}
