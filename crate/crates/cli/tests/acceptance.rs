//! End-to-end acceptance run: one line per criterion, then a single assertion.

use std::time::Duration;

use galcoh_cli::corpus::run_suite;
use galcoh_cli::run;
use serde_json::Value;

const SEED: u64 = 20240601;
const BITS: u32 = 160;

struct Criterion {
    id: usize,
    name: &'static str,
    suite: &'static str,
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "mirror field and closure", suite: "mirror", budget: Some(Duration::from_secs(2)) },
    Criterion { id: 2, name: "C4 codec example", suite: "c4-codec", budget: Some(Duration::from_secs(1)) },
    Criterion { id: 3, name: "codec round trips", suite: "roundtrip", budget: Some(Duration::from_secs(60)) },
    Criterion { id: 4, name: "resolvent invariants", suite: "resolvents", budget: None },
    Criterion { id: 5, name: "C3 group law, certified", suite: "group-law", budget: None },
    Criterion { id: 6, name: "Hilbert symbol vs conic oracle", suite: "hilbert", budget: Some(Duration::from_secs(30)) },
    Criterion { id: 7, name: "local pairing desk checks", suite: "tate", budget: None },
    Criterion { id: 8, name: "H1 vs holomorph lifts", suite: "h1-bijection", budget: None },
    Criterion { id: 9, name: "corestriction identity", suite: "lemma53", budget: None },
    Criterion { id: 10, name: "Galois group vs Frobenius", suite: "galois", budget: None },
    Criterion { id: 11, name: "structure and holomorph counts", suite: "structures", budget: None },
];

fn payload(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("galcoh").chain(args.iter().copied()));
    let v: Value = serde_json::from_str(&out.stdout).expect("json output");
    (out.code, v["payload"].clone())
}

/// Extra CLI-level checks layered on top of a suite.
fn cli_check(id: usize) -> Result<(), String> {
    match id {
        1 => {
            let (code, p) = payload(&["etale", "mirror", "--f", "7,0,-6,0,1"]);
            if code != 0 || p["mirror"] != "8,0,-12,0,1" {
                return Err(format!("cli mirror gave {p}"));
            }
        }
        2 => {
            let (code, p) = payload(&["h1", "c4", "encode", "--D", "14", "--a", "-5/4", "--b", "1/2", "--c", "3/2"]);
            if code != 0 || p["algebra_factors"] != serde_json::json!(["7,0,-6,0,1"]) {
                return Err(format!("cli encode gave {p}"));
            }
        }
        _ => {}
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut all = true;
    for c in &CRITERIA {
        let line = match run_suite(c.suite, SEED, BITS) {
            Ok(r) => {
                let slow = c.budget.is_some_and(|b| r.elapsed > b);
                let cli = cli_check(c.id);
                let ok = r.passed && !slow && cli.is_ok();
                all &= ok;
                let mut note = format!("{} cases, {:.2?}", r.cases, r.elapsed);
                if let Some(b) = c.budget {
                    note += &format!(" (budget {b:?})");
                }
                if !r.failures.is_empty() {
                    note += &format!("; failures: {}", r.failures.join("; "));
                }
                if let Err(e) = cli {
                    note += &format!("; {e}");
                }
                format!("[{}] {:>2} {}: {note}", if ok { "PASS" } else { "FAIL" }, c.id, c.name)
            }
            Err(e) => {
                all = false;
                format!("[FAIL] {:>2} {}: error {e}", c.id, c.name)
            }
        };
        println!("{line}");
    }
    assert!(all, "some acceptance criteria failed");
}
