//! End-to-end checks of the binary: JSON contracts, exit codes, file
//! output, and byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multitrans"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 output")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("multitrans-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn golden_file() -> PathBuf {
    let p = tmp("golden.json");
    std::fs::write(&p, r#"{"kind":"sft","vertices":2,"edges":[[0,0],[0,1],[1,0]]}"#).unwrap();
    p
}

#[test]
fn hitting_golden_mean_contract() {
    let p = golden_file();
    let out = run(&["hitting", "--system", p.to_str().unwrap(), "--u", "1", "--v", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"exact\":{\"exceptional\":[],\"modulus\":1,\"residues\":[0],\"threshold\":2}}\n"
    );
}

#[test]
fn family_odds_parity_contract() {
    let out = run(&["family", "--kind", "vec", "--a", "1,2", "--set", "odds"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"verdict\":\"fails\",\"witness\":[0,0]}\n");
}

#[test]
fn analyze_reports_mixing_for_golden_mean() {
    let p = golden_file();
    let out = run(&["analyze", "--system", p.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mixing"]["verdict"], "holds");
    assert_eq!(v["transitive"]["verdict"], "holds");
}

#[test]
fn analyze_cycle_weak_mixing_fails() {
    let out = run(&["analyze", "--system", "cycle3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["transitive"]["verdict"], "holds");
    assert_eq!(v["weakly_mixing"]["verdict"], "fails");
}

#[test]
fn exit_codes() {
    // Unknown system token / unreadable file: parse error.
    assert_eq!(run(&["analyze", "--system", "no-such-thing"]).status.code(), Some(2));

    // A structurally empty system: invariant violation.
    let p = tmp("empty.json");
    std::fs::write(&p, r#"{"kind":"sft","vertices":2,"edges":[]}"#).unwrap();
    assert_eq!(run(&["analyze", "--system", p.to_str().unwrap()]).status.code(), Some(3));

    // Tower needs a finite map: capability.
    assert_eq!(
        run(&["verify", "--theorem", "tower", "--system", "golden"]).status.code(),
        Some(4)
    );

    // Failing verdict is exit 0 by default, 1 under --strict.
    assert_eq!(run(&["family", "--kind", "vec", "--a", "1,2", "--set", "odds"]).status.code(), Some(0));
    assert_eq!(
        run(&["--strict", "family", "--kind", "vec", "--a", "1,2", "--set", "odds"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_corpus_summary_shape() {
    let out = run(&["verify", "--theorem", "thm42", "--corpus", "maps3", "--sample", "16"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["systems"], 32);
    assert_eq!(v["agree"], v["total_cases"]);
    assert_eq!(v["fatal_disagreements"], 0);
}

#[test]
fn verify_single_system_report_shape() {
    let out = run(&["verify", "--theorem", "thm42", "--system", "golden", "--a", "1,2", "--depth", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let case = &v["cases"][0];
    assert_eq!(case["side_L"], "holds");
    assert_eq!(case["side_R"], "holds");
    assert_eq!(case["agree"], true);
}

#[test]
fn out_prefix_writes_json_and_csv() {
    let prefix = tmp("report");
    let out = run(&[
        "verify", "--theorem", "lemma32", "--system", "cycle3", "--n", "2", "--bound", "2",
        "--out", prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = std::fs::read_to_string(prefix.with_extension("json")).unwrap();
    assert_eq!(json, stdout(&out));
    let csv = std::fs::read_to_string(prefix.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "label,system,a,side_L,side_R,agree,fatal,witness");
    let row = lines.next().unwrap();
    assert!(row.starts_with("lemma32,"));
    assert_eq!(row.split(',').count(), 8);
}

#[test]
fn set_file_round_trip() {
    // hitting --out produces a file the family command accepts as --set.
    let p = golden_file();
    let set_path = tmp("golden-n11.json");
    let out = run(&[
        "hitting", "--system", p.to_str().unwrap(), "--u", "1", "--v", "1",
        "--out", set_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["family", "--kind", "vec", "--a", "1,2", "--set", set_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"verdict\":\"holds\"}\n");
}

#[test]
fn search_deterministic_and_csv() {
    let prefix = tmp("search");
    let args = [
        "search", "--count", "6", "--max-gap", "10", "--horizon", "128", "--seed", "9",
        "--out", prefix.to_str().unwrap(),
    ];
    let first = run(&args);
    assert!(first.status.success());
    let csv1 = std::fs::read_to_string(prefix.with_extension("csv")).unwrap();
    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second));
    let csv2 = std::fs::read_to_string(prefix.with_extension("csv")).unwrap();
    assert_eq!(csv1, csv2);
    assert!(csv1.starts_with("gaps,horizon,transitive,vec_1_2,weakly_mixing,mixing\n"));
    assert_eq!(csv1.trim().lines().count(), 7);
}

#[test]
fn every_subcommand_is_byte_deterministic() {
    let p = golden_file();
    let ps = p.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["analyze", "--system", ps],
        vec!["hitting", "--system", ps, "--u", "1", "--v", "0.0"],
        vec!["family", "--kind", "infty", "--r-max", "3", "--set", "evens"],
        vec!["verify", "--theorem", "prop33", "--system", "full2"],
        vec!["verify", "--theorem", "thm53", "--system", "full2", "--e-size", "3"],
        vec!["search", "--count", "4", "--max-gap", "8", "--horizon", "64", "--seed", "3"],
    ];
    for args in invocations {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(stdout(&a), stdout(&b), "{args:?} not deterministic");
        assert_eq!(a.status.code(), b.status.code());
    }
}
