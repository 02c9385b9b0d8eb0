use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bpu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpu")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = bpu(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("bpu-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn torsion_json() {
    let v = json(&["torsion", "--n-range", "10", "--deg", "12", "--format", "json"]);
    assert_eq!(v[0]["torsion"]["elementary_divisors"], serde_json::json!([2, 5]));
    assert_eq!(v[0]["verdict"], "split-by-free-top");

    let v = json(&["torsion", "--n-range", "7", "--deg", "13", "--format", "json"]);
    assert_eq!(v[0]["torsion"]["elementary_divisors"], serde_json::json!([]));

    let v = json(&["torsion", "--n-range", "2..=8", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 7 * 3);
}

#[test]
fn page_entry() {
    let v = json(&["page", "--n", "6", "--entry", "6,6", "--page", "4", "--format", "json"]);
    assert_eq!(v["group"]["free_rank"], 0);
    assert_eq!(v["group"]["invariant_factors"], serde_json::json!([]));

    let out = bpu(&["page", "--n", "6", "--entry", "0,12", "--page", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("c6"));
}

#[test]
fn relation_and_invariants() {
    let v = json(&["relation", "--n", "5", "--format", "json"]);
    assert_eq!(v["m"], 125);
    assert_eq!(v["f"], 0);

    let v = json(&["invariants", "--n", "6", "--format", "json"]);
    assert_eq!(v["n"], 6);
}

#[test]
fn verify_suites_pass() {
    for suite in ["torsion", "cyclic-quotient", "invariants", "rules-consistency"] {
        let out = bpu(&["verify", "--suite", suite, "--n-range", "2..12"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bpu(&["torsion", "--n-range", "9..3"]).status.code(), Some(2));
    assert_eq!(bpu(&["page", "--n", "6", "--entry", "6"]).status.code(), Some(2));
    assert_eq!(bpu(&["torsion", "--n-range", "6", "--deg", "11"]).status.code(), Some(2));
    assert_eq!(bpu(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn rules_override() {
    let empty = temp_file("empty.json", r#"{"version":1,"rules":[]}"#);
    let out = bpu(&["verify", "--suite", "torsion", "--n-range", "2..12", "--rules", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let junk = temp_file("junk.json", "not json");
    let out = bpu(&["torsion", "--n-range", "6", "--rules", junk.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let shipped = temp_file("shipped.json", bpu_sseq::page::RuleTable::builtin().to_json().as_str());
    let out = bpu(&["verify", "--suite", "torsion", "--n-range", "2..12", "--rules", shipped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for p in [empty, junk, shipped] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["torsion", "--n-range", "2..16", "--format", "json"];
    assert_eq!(bpu(&args).stdout, bpu(&args).stdout);
    let args = ["invariants", "--n", "12"];
    assert_eq!(bpu(&args).stdout, bpu(&args).stdout);
}
