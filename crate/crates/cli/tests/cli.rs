use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use relcalc::builders::{corpus, cyclic_group};
use relcalc::{Algebra, Carrier, Signature};
use relcalc_cli::format::{algebra_json, Object, Workspace};
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relcalc"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn reparse(name: &str, alg: &Algebra) -> Algebra {
    let mut ws = Workspace::default();
    ws.add_text("mem", &algebra_json(name, alg).to_string())
        .unwrap();
    ws.algebra(Some(name)).unwrap().1.clone()
}

#[test]
fn z3_fixture_is_the_cyclic_group() {
    let ws = Workspace::load(&fixture("z3.alg")).unwrap();
    assert_eq!(ws.algebra(None).unwrap().1, &cyclic_group(3).unwrap());
}

#[test]
fn algebra_files_round_trip() {
    for (name, alg) in corpus(4) {
        assert_eq!(reparse(&name, &alg), alg, "{name}");
    }
    for f in [
        "z3.alg",
        "implication1.alg",
        "heyting3.alg",
        "quasigroup3.alg",
        "four.alg",
    ] {
        let ws = Workspace::load(&fixture(f)).unwrap();
        for e in ws.entries() {
            if let Object::Algebra(a) = &e.object {
                assert_eq!(&reparse(&e.name, a), a, "{f}");
            }
        }
    }
}

fn random_algebra() -> impl Strategy<Value = Algebra> {
    (
        1usize..=4,
        proptest::collection::vec(0usize..=3, 0..=3),
        any::<bool>(),
    )
        .prop_flat_map(|(n, arities, labelled)| {
            let tables = arities
                .iter()
                .map(|&k| proptest::collection::vec(0..n, n.pow(k as u32)))
                .collect::<Vec<_>>();
            tables.prop_map(move |tables| {
                let carrier = if labelled {
                    Carrier::with_labels((0..n).map(|i| format!("e{i}")).collect()).unwrap()
                } else {
                    Carrier::new(n)
                };
                let sig = Signature::new(
                    arities
                        .iter()
                        .enumerate()
                        .map(|(i, &k)| (format!("op{i}"), k)),
                )
                .unwrap();
                Algebra::new(carrier, sig, tables).unwrap()
            })
        })
}

proptest! {
    #[test]
    fn random_algebras_round_trip(alg in random_algebra()) {
        prop_assert_eq!(reparse("a", &alg), alg);
    }
}

#[test]
fn range_errors_name_the_operation() {
    let (code, _, err) = run(&["congruences", &fixture("bad_range.alg")]);
    assert_eq!(code, 2);
    assert!(err.contains("op `·` table[3]"), "{err}");
}

#[test]
fn mismatched_compose_is_an_input_error() {
    let (code, out, err) = run(&["compose", &fixture("mismatch.rel"), "r", "s"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
}

#[test]
fn quaternary_search_on_implication_fixture() {
    let (code, out, _) = run(&[
        "find-term",
        &fixture("implication1.alg"),
        "--kind",
        "quaternary",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("result: found"));
    assert!(out.contains("(→ (→ x2 x1) x0)"), "{out}");
}

#[test]
fn four_element_permutability_witness() {
    let f = fixture("four.alg");
    let (code, out, _) = run(&[
        "check-permutability",
        &f,
        "--level",
        "2",
        "--pair",
        "R",
        "S",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("pair: [0,2]"), "{out}");
    let (code, out, _) = run(&[
        "check-permutability",
        &f,
        "--level",
        "3",
        "--pair",
        "R",
        "S",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("pair: [0,3]"), "{out}");
    let (code, _, _) = run(&[
        "check-permutability",
        &f,
        "--level",
        "4",
        "--pair",
        "R",
        "S",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let (code, out, _) = run(&[
        "find-term",
        &fixture("z3.alg"),
        "--kind",
        "maltsev",
        "--budget",
        "5",
    ]);
    assert_eq!(code, 3);
    assert!(out.contains("budget-exceeded"));
}

#[test]
fn rejected_diagrams_exit_2() {
    let (code, _, err) = run(&[
        "check",
        &fixture("barr_kock_bad.dia"),
        "--which",
        "barr-kock",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("rejected"), "{err}");
}

#[test]
fn json_output_matches_text() {
    let path = std::env::temp_dir().join(format!("relcalc-cli-test-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let (code, out, _) = run(&[
        "--json",
        &p,
        "check",
        &fixture("squares.dia"),
        "--which",
        "goursat-pushout",
        "--name",
        "set4",
    ]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["goursat_pushout"]["missing"], serde_json::json!([2, 4]));
    assert!(out.contains("missing: [2,4]"));
}

#[test]
fn build_output_loads() {
    let (code, out, _) = run(&["build", "heyting-chain", "3", "--name", "h"]);
    assert_eq!(code, 0);
    let mut ws = Workspace::default();
    ws.add_text("stdout", &out).unwrap();
    assert_eq!(ws.algebra(Some("h")).unwrap().1.size(), 3);
}
