//! End-to-end tests against the built binary: exit codes, reports and
//! re-parseable output artifacts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../nmvl/fixtures")
        .join(name)
}

fn nmvl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmvl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn validate_ok_and_violations() {
    let out = nmvl(&["validate", fixture("circ2.mvl").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "OK");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mvl");
    let text = std::fs::read_to_string(fixture("circ2.mvl"))
        .unwrap()
        .replace("2 -> 2", "2 ->");
    std::fs::write(&bad, text).unwrap();
    let out = nmvl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("empty output set at circ(2)"), "{out:?}");

    let out = nmvl(&["validate", "/does/not/exist.mvl"]);
    assert_eq!(code(&out), 2);

    // syntactically broken files are usage-level errors, not reports
    let garbage = dir.path().join("garbage.mvl");
    std::fs::write(&garbage, "this is not a logic\n").unwrap();
    let out = nmvl(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn schemas_lists_table_axioms() {
    let out = nmvl(&[
        "schemas",
        "--calc",
        "A",
        fixture("circ2.mvl").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("table_ax [").count(), 6); // circ: 2, or: 4
    assert!(text.contains("# machine"));

    let out = nmvl(&[
        "schemas",
        "--calc",
        "Rsd",
        fixture("circ2.mvl").to_str().unwrap(),
    ]);
    assert!(stdout(&out).contains("multi_shift"));
    assert!(stdout(&out).contains("table_l ["));

    let out = nmvl(&[
        "schemas",
        "--calc",
        "bogus",
        fixture("circ2.mvl").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn entails_verdicts() {
    let logic = fixture("circ2.mvl");
    let out = nmvl(&["entails", logic.to_str().unwrap(), "|- p:1, p:2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "ENTAILED");

    let out = nmvl(&["entails", logic.to_str().unwrap(), "p:2 |- circ(p):1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "COUNTERMODEL\np = 2\ncirc(p) = 2\n");

    let out = nmvl(&["entails", logic.to_str().unwrap(), "p:5 |-"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn entails_with_hypotheses() {
    let logic = fixture("circ2.mvl");
    let out = nmvl(&[
        "entails",
        "--hyp",
        "|- p:1",
        logic.to_str().unwrap(),
        "circ(p):2 |- p:1",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");

    let dir = tempfile::tempdir().unwrap();
    let hyp_file = dir.path().join("hyps.txt");
    std::fs::write(&hyp_file, "# assumptions\n|- p:1\n").unwrap();
    let out = nmvl(&[
        "entails",
        "--hyp-file",
        hyp_file.to_str().unwrap(),
        logic.to_str().unwrap(),
        "circ(p):2 |- p:1",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
}

#[test]
fn prove_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let proof_path = dir.path().join("out.proof");
    let logic = fixture("circ2.mvl");
    let out = nmvl(&[
        "prove",
        "--calc",
        "R",
        "--out",
        proof_path.to_str().unwrap(),
        logic.to_str().unwrap(),
        "circ(p):1 |- p:1",
    ]);
    assert_eq!(code(&out), 0, "{out:?}");

    let out = nmvl(&[
        "check",
        "--calc",
        "R",
        logic.to_str().unwrap(),
        proof_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "OK");

    // the same proof must not check in A (table_r is not a rule of A)
    let out = nmvl(&[
        "check",
        "--calc",
        "A",
        logic.to_str().unwrap(),
        proof_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("table_r not in A"), "{out:?}");
}

#[test]
fn prove_refuted_prints_countermodel() {
    let out = nmvl(&[
        "prove",
        "--calc",
        "A",
        fixture("circ2.mvl").to_str().unwrap(),
        "p:2 |- circ(p):1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("COUNTERMODEL"));
}

#[test]
fn check_reports_tampered_proof_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let tampered = dir.path().join("tampered.proof");
    let text = std::fs::read_to_string(fixture("proofs/circ_inverse_r.proof"))
        .unwrap()
        .replace("labels=[2]", "labels=[1]");
    std::fs::write(&tampered, text).unwrap();
    let out = nmvl(&[
        "check",
        "--calc",
        "R",
        fixture("circ2.mvl").to_str().unwrap(),
        tampered.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("at root/"), "{out:?}");
}

#[test]
fn translate_directions() {
    let dir = tempfile::tempdir().unwrap();
    let logic = fixture("circ2.mvl");
    let translated = dir.path().join("translated.proof");
    let out = nmvl(&[
        "translate",
        "--from",
        "A",
        "--to",
        "R",
        "--out",
        translated.to_str().unwrap(),
        logic.to_str().unwrap(),
        fixture("proofs/or_split_a.proof").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = std::fs::read_to_string(&translated).unwrap();
    assert!(!text.contains("table_ax"));
    let out = nmvl(&[
        "check",
        "--calc",
        "R",
        logic.to_str().unwrap(),
        translated.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let out = nmvl(&[
        "translate",
        "--from",
        "A",
        "--to",
        "Rsd",
        logic.to_str().unwrap(),
        fixture("proofs/or_split_a.proof").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn elimcut_on_weakening_cut() {
    let dir = tempfile::tempdir().unwrap();
    let proof = dir.path().join("cut.proof");
    std::fs::write(
        &proof,
        "(cut {phi=q, k=1} \"p:1 |- p:1\"\n  (r_weak {phi=q, k=1} \"p:1 |- p:1, q:1\"\n    (ax {phi=p, k=1} \"p:1 |- p:1\"))\n  (l_weak {phi=q, k=1} \"p:1, q:1 |- p:1\"\n    (ax {phi=p, k=1} \"p:1 |- p:1\")))\n",
    )
    .unwrap();
    let out = nmvl(&[
        "elimcut",
        "--calc",
        "R",
        fixture("circ2.mvl").to_str().unwrap(),
        proof.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout(&out), "(ax {phi=p, k=1} \"p:1 |- p:1\")\n");
}

#[test]
fn fuzz_runs_and_rejects_zero_instances() {
    let out = nmvl(&["fuzz", "--seed", "1", "--instances", "15"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("15 ok"), "{out:?}");

    let out = nmvl(&["fuzz", "--instances", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn prove_exhausted_reports_budget() {
    let out = nmvl(&[
        "prove",
        "--calc",
        "A",
        "--max-nodes",
        "1",
        fixture("const2.mvl").to_str().unwrap(),
        "|- c(p):1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("EXHAUSTED"), "{out:?}");
}
