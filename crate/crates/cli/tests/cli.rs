//! End-to-end exit-code and golden-output tests for the `rbh` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rbh"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn construct_writes_canonical_bgf() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.bgf");
    let out = run(&["construct", "--family", "Q", "--k", "0", "--n", "3", "-o"])
        .status
        .code();
    assert_eq!(out, Some(2), "missing -o argument is a usage error");

    let out = bin()
        .args(["construct", "--family", "Q", "--k", "0", "--n", "3", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "p bgf 3 3 6\ne 0 3\ne 0 4\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n");
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = run(&["construct", "--family", "Q", "--k", "9", "--n", "3"]);
    assert_eq!(code(&out), 2);
    let out = run(&["construct", "--family", "Z", "--k", "0", "--n", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn rho_prints_twelve_digits() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.bgf");
    std::fs::write(&path, "p bgf 3 2 6\ne 0 3\ne 0 4\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n").unwrap();
    let out = bin().arg("rho").arg(&path).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2.449489742783\n");
}

#[test]
fn rho_rejects_malformed_bgf() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.bgf");
    std::fs::write(&path, "p bgf 2 2 1\ne 0 1\n").unwrap();
    let out = bin().arg("rho").arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = bin().arg("rho").arg(dir.path().join("missing.bgf")).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn shift_moves_the_expected_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.bgf");
    std::fs::write(&path, "p bgf 2 2 1\ne 1 2\n").unwrap();
    let out = bin().args(["shift", "--x", "0", "--y", "1"]).arg(&path).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "p bgf 2 2 1\ne 0 2\n");

    // A pair straddling the bipartition is a usage error.
    let out = bin().args(["shift", "--x", "1", "--y", "2"]).arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn bishift_reaches_the_staircase() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.bgf");
    std::fs::write(&path, "p bgf 2 2 1\ne 1 3\n").unwrap();
    let out = bin().arg("bishift").arg(&path).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "p bgf 2 2 1\ne 0 2\n");
}

#[test]
fn path_search_exit_codes() {
    let out = bin().arg("path").arg(fixture("constant_q02.bfam")).output().unwrap();
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "none\n");

    let out = bin().arg("path").arg(fixture("mixed_q02.bfam")).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "path 0 2 1 3 ; g 0 1 2\n");
}

#[test]
fn cycle_search_exit_codes() {
    let out = bin().arg("cycle").arg(fixture("constant_b12.bfam")).output().unwrap();
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "none\n");

    let out = bin().arg("cycle").arg(fixture("mixed_b12.bfam")).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "cycle 0 2 1 3 ; g 0 1 3 2\n");
}

#[test]
fn longest_always_succeeds() {
    let out = bin().arg("longest").arg(fixture("constant_q02.bfam")).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "path 0 2 1 ; g 0 1\n");
}

#[test]
fn verify_emits_passing_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = bin()
        .args(["verify", "--target", "thm1.4", "--n", "2", "--mode", "exhaustive", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["cases_checked"], 4096);
    assert_eq!(report["exceptions"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_failure_exits_one_with_report() {
    // A huge eps lets weak graphs into the hypothesis, forcing
    // violations; the report must still be emitted.
    let out = run(&["verify", "--target", "thm1.4", "--n", "2", "--eps", "1.0"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn verify_reports_do_not_depend_on_jobs() {
    let strip = |text: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v["elapsed_ms"] = 0.into();
        v
    };
    let a = run(&["verify", "--target", "lem3.2", "--n", "3", "--jobs", "1"]);
    let b = run(&["verify", "--target", "lem3.2", "--n", "3", "--jobs", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
}

#[test]
fn verify_lem42_expands_to_both_orientations_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("summary.csv");
    let out = bin()
        .args(["verify", "--target", "lem4.2", "--n", "2", "--csv"])
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["target"], "lem4.2a");
    assert_eq!(arr[1]["target"], "lem4.2b");
    let rows = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = rows.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("lem4.2a,2,exhaustive,"));
}

#[test]
fn sample_matches_library_golden() {
    let golden = include_str!("../../core/tests/golden/sample_2_2_3_seed1.bfam");
    let out = run(&[
        "sample", "--nx", "2", "--ny", "2", "--k", "3", "--seed", "1", "--count", "5",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden);

    // RBH_SEED supplies the seed when the flag is absent.
    let out = bin()
        .args(["sample", "--nx", "2", "--ny", "2", "--k", "3", "--count", "5"])
        .env("RBH_SEED", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden);

    let out = bin()
        .args(["sample", "--nx", "2", "--ny", "2", "--k", "3", "--count", "1"])
        .env("RBH_SEED", "not-a-seed")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn sample_copies_pool() {
    let out = run(&[
        "sample", "--nx", "3", "--ny", "3", "--k", "5", "--seed", "3", "--count", "2", "--pool",
        "copies:Q:0:3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("p bfam 3 3 5").count(), 2);
    // Every member of a Q^0_3-copy family has 6 edges.
    assert_eq!(text.matches("p bgf 3 3 6").count(), 10);

    let out = run(&["sample", "--nx", "2", "--ny", "2", "--k", "1", "--pool", "copies:Q:0:3"]);
    assert_eq!(code(&out), 2, "pool parts must match the requested parts");
}

#[test]
fn usage_errors_exit_two() {
    // `path` with no file reads the (empty) stdin, a parse error.
    assert_eq!(code(&run(&["path"])), 2);
    assert_eq!(code(&run(&["--definitely-not-a-flag"])), 2);
    assert_eq!(code(&run(&["verify", "--target", "thm9.9"])), 2);
    assert_eq!(code(&run(&["verify", "--target", "thm1.4", "--mode", "nonsense"])), 2);
}
