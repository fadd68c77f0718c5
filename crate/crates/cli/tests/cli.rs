use std::fs;
use std::path::PathBuf;

use galcoh_cli::run;
use serde_json::Value;

fn galcoh(args: &[&str]) -> galcoh_cli::Outcome {
    run(std::iter::once("galcoh").chain(args.iter().copied()))
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("etale_info_d4", &["etale", "info", "--f", "7,0,-6,0,1"]),
    ("h1_c4_encode", &["h1", "c4", "encode", "--D", "14", "--a", "-5/4", "--b", "1/2", "--c", "3/2"]),
    ("local_hilbert_5", &["local", "hilbert", "--p", "5", "--a", "2", "--b", "5"]),
    ("etale_mirror", &["etale", "mirror", "--f", "7,0,-6,0,1"]),
    ("poly_factor", &["poly", "factor", "--f", "-1,0,0,0,1"]),
    ("group_structures_c4", &["group", "structures", "--image", "C4", "--group", "C4"]),
    ("coh_hol_h1_s3", &["coh", "hol-h1", "--group", "S3", "--module", "C3", "--action", "sign"]),
    ("local_classes_7_cubes", &["local", "classes", "--p", "7", "--m", "3"]),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Set GALCOH_BLESS=1 to rewrite the golden files from current output.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("GALCOH_BLESS").is_some();
    for (name, args) in GOLDEN {
        let out = galcoh(args);
        assert_eq!(out.code, 0, "{name}: {}", out.stdout);
        let path = golden_path(name);
        if bless {
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(out.stdout, expected, "{name} drifted from its golden file");
    }
}

#[test]
fn spec_examples() {
    let v: Value = serde_json::from_str(&galcoh(GOLDEN[0].1).stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["galois_tag"]["label"], "D4");
    assert_eq!(v["payload"]["resolvents"]["quadratic"], "7");

    let v: Value = serde_json::from_str(&galcoh(GOLDEN[1].1).stdout).unwrap();
    assert_eq!(v["payload"]["algebra_factors"], serde_json::json!(["7,0,-6,0,1"]));

    let v: Value = serde_json::from_str(&galcoh(GOLDEN[2].1).stdout).unwrap();
    assert_eq!(v["payload"]["value"], "-1");
}

#[test]
fn output_is_deterministic() {
    for (_, args) in GOLDEN {
        assert_eq!(galcoh(args).stdout, galcoh(args).stdout);
    }
    let a = galcoh(&["local", "tate", "--module", "c3", "--p", "7", "--D", "1", "--seed", "9"]);
    let b = galcoh(&["local", "tate", "--module", "c3", "--p", "7", "--D", "1", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let bad = galcoh(&["poly", "factor", "--f", "1,x"]);
    assert_eq!(bad.code, 2);
    let v: Value = serde_json::from_str(&bad.stdout).unwrap();
    assert_eq!(v["status"], "error");
    assert_eq!(v["payload"]["code"], "invalid_input");
    assert!(!v["payload"]["message"].as_str().unwrap().is_empty());

    let wild = galcoh(&["local", "classes", "--p", "3", "--m", "3"]);
    assert_eq!(wild.code, 3);
    let v: Value = serde_json::from_str(&wild.stdout).unwrap();
    assert_eq!(v["payload"]["code"], "unsupported");

    assert_eq!(galcoh(&["etale", "info", "--f", "1,2,1"]).code, 2);
    assert_eq!(galcoh(&["frobnicate"]).code, 64);
    assert!(!galcoh(&["frobnicate"]).stderr.is_empty());
    assert_eq!(galcoh(&["local", "hilbert", "--p", "5"]).code, 64);
    assert_eq!(galcoh(&["--help"]).code, 0);
    assert_eq!(galcoh(&["corpus", "run", "--suite", "nope"]).code, 2);
}

#[test]
fn every_subcommand_answers() {
    let cases: &[&[&str]] = &[
        &["poly", "disc", "--f", "7,0,-6,0,1"],
        &["etale", "torsor", "--f", "1,0,-10,0,1", "--group", "V4"],
        &["etale", "closure", "--f", "-2,0,0,1"],
        &["group", "hol", "--module", "C2xC2"],
        &["group", "centralizer", "--group", "C4"],
        &["group", "partitions", "--group", "V4"],
        &["coh", "h", "--group", "S3", "--module", "C3", "--action", "sign"],
        &["coh", "lemma53", "--count", "3"],
        &["h1", "c3", "encode", "--D", "5", "--delta", "1/4,1/4"],
        &["h1", "c3", "decode", "--f", "1,-3,0,1"],
        &["h1", "c3", "add", "--D", "5", "--delta", "1/4,1/4", "--delta2", "1/4,1/4"],
        &["h1", "v4", "encode", "--R", "-2,0,0,1", "--delta", "1"],
        &["h1", "v4", "decode", "--f", "1,0,-10,0,1"],
        &["h1", "v4", "add", "--R", "-2,0,0,1", "--delta", "1", "--delta2", "1"],
        &["h1", "c4", "decode", "--f", "7,0,-6,0,1"],
        &["h1", "c4", "add", "--D", "14", "--a", "-5/4", "--b", "1/2", "--c", "3/2", "--a2", "-5/4", "--b2", "1/2", "--c2", "3/2"],
        &["local", "tate", "--module", "v4", "--p", "5"],
        &["local", "tate", "--module", "c3", "--p", "7", "--D", "1", "--sigma", "1,0", "--tau", "1,0"],
        &["local", "h1", "--module", "mu3", "--p", "7"],
        &["corpus", "list"],
        &["corpus", "run", "--suite", "structures"],
    ];
    for args in cases {
        let out = galcoh(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["status"], "ok", "{args:?}");
    }
}
