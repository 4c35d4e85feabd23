use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hemiring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hemiring"))
        .args(args)
        .env_remove("HEMIRING_FORMAT")
        .env_remove("HEMIRING_DENOMINATOR")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Vec<Value>) {
    let mut full = vec!["--format", "json-lines"];
    full.extend_from_slice(args);
    let out = hemiring(&full);
    let lines = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (out.status.code().unwrap(), lines)
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = hemiring(&["fixtures", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    dir
}

fn file(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn verify_reports_the_absorbing_structure_as_valid() {
    let dir = fixtures();
    let (code, lines) = json(&["verify", &file(&dir, "absorbing.json")]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["valid"], true);
    assert_eq!(lines[0]["identity"], "1");
    assert_eq!(lines[0]["commutative_mul"], true);
}

#[test]
fn verify_prints_the_distributivity_witness_and_exits_one() {
    let dir = fixtures();
    let out = hemiring(&["verify", &file(&dir, "nondistributive.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("left-distributivity at (b, a, a)"), "{text}");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name": "x", "elements": ["0"], "add": [[0]]}"#).unwrap();
    assert_eq!(hemiring(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hemiring(&["verify", "missing.json"]).status.code(), Some(2));
    assert_eq!(hemiring(&["ideals"]).status.code(), Some(2));
}

#[test]
fn absorbing_structure_has_only_the_improper_h_ideal() {
    let dir = fixtures();
    let (code, lines) = json(&["ideals", &file(&dir, "absorbing.json"), "--kind", "h"]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["ideals"], serde_json::json!([["0", "a", "1"]]));
    assert_eq!(lines[0]["complete"], true);
}

#[test]
fn json_lines_output_is_deterministic() {
    let dir = fixtures();
    let f = file(&dir, "absorbing.json");
    let args = ["--format", "json-lines", "check", f.as_str(), "--statements", "all"];
    let a = hemiring(&args);
    let b = hemiring(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn fixtures_reverify_to_their_statuses() {
    let dir = fixtures();
    for name in [
        "absorbing.json",
        "nondistributive.json",
        "nondistributive.annotation.json",
        "nondistributive.lambda.json",
        "nondistributive.mu.json",
        "nondistributive.delta.json",
    ] {
        assert!(Path::new(&file(&dir, name)).exists(), "{name}");
    }
    assert_eq!(hemiring(&["verify", &file(&dir, "absorbing.json")]).status.code(), Some(0));
    assert_eq!(hemiring(&["verify", &file(&dir, "nondistributive.json")]).status.code(), Some(1));
    let note: Value = serde_json::from_str(&std::fs::read_to_string(file(&dir, "nondistributive.annotation.json")).unwrap()).unwrap();
    assert_eq!(note["status"], "quarantined");
}

#[test]
fn quarantined_tables_are_refused_by_analysis_commands() {
    let dir = fixtures();
    let f = file(&dir, "nondistributive.json");
    assert_eq!(hemiring(&["ideals", &f]).status.code(), Some(1));
    assert_eq!(hemiring(&["--allow-quarantined", "ideals", &f]).status.code(), Some(0));
    let out = hemiring(&["closure", &f, "--set", "0,a"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("QUARANTINED"));
}

#[test]
fn fuzzy_products_agree_with_the_oracle() {
    let dir = fixtures();
    let f = file(&dir, "nondistributive.json");
    let (lhs, rhs) = (file(&dir, "nondistributive.lambda.json"), file(&dir, "nondistributive.mu.json"));
    for op in ["product", "intrinsic", "sum"] {
        let (code, lines) = json(&["fuzzy", &f, "--op", op, "--lhs", &lhs, "--rhs", &rhs, "--oracle"]);
        assert_eq!(code, 0, "{op}");
        assert_eq!(lines[0]["oracle_agrees"], true);
        assert_eq!(lines[0]["quarantined"], true);
    }
    let (_, lines) = json(&["fuzzy", &f, "--op", "intrinsic", "--lhs", &lhs, "--rhs", &rhs]);
    assert_eq!(lines[0]["result"], serde_json::json!({"0": "3/5", "a": "1/2", "b": "1/2", "c": "3/5"}));
    let misuse = hemiring(&["fuzzy", &f, "--op", "meet", "--lhs", &lhs, "--rhs", &rhs, "--oracle"]);
    assert_eq!(misuse.status.code(), Some(2));
}

#[test]
fn fuzzy_values_accept_decimals_on_the_grid() {
    let dir = fixtures();
    let f = file(&dir, "absorbing.json");
    let lam = dir.path().join("decimal.json");
    std::fs::write(&lam, r#"{"hemiring": "absorbing", "values": {"0": "1", "a": "0.45", "1": "0.45"}}"#).unwrap();
    let lam = lam.to_str().unwrap();
    let (code, lines) = json(&["fuzzy", &f, "--op", "join", "--lhs", lam, "--rhs", lam]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["result"]["a"], "9/20");
    assert_eq!(hemiring(&["-D", "10", "fuzzy", &f, "--op", "join", "--lhs", lam, "--rhs", lam]).status.code(), Some(2));
}

#[test]
fn check_exit_codes_follow_the_suite_outcome() {
    let dir = fixtures();
    let absorbing = file(&dir, "absorbing.json");
    let (code, lines) = json(&["check", &absorbing, "--statements", "L2.1,T6.2"]);
    assert_eq!(code, 0);
    assert_eq!(lines.last().unwrap()["summary"]["holds"], 2);

    let corpus = tempfile::tempdir().unwrap();
    let c = corpus.path().to_str().unwrap();
    assert!(hemiring(&["generate", "--order", "1,2", "--out", c]).status.success());
    let (code, lines) = json(&["check", "--corpus", c, "--statements", "L2.2"]);
    assert_eq!(code, 1);
    let failing: Vec<&str> =
        lines.iter().filter(|l| l["status"] == "fails").map(|l| l["structure"].as_str().unwrap()).collect();
    assert_eq!(failing, ["order2_1"]);

    let capped = hemiring(&["--fuzzy-budget", "2", "check", &absorbing, "--statements", "T5.15"]);
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(hemiring(&["check", &absorbing, "--statements", "Z0.0"]).status.code(), Some(2));
}

#[test]
fn generate_writes_the_known_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (code, lines) = json(&["generate", "--order", "2,3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["manifest"]["counts"], serde_json::json!({"2": 4, "3": 22}));
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn fuzzy_ideals_classify_non_constant_members() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(hemiring(&["generate", "--order", "2", "--out", d]).status.success());
    let (code, lines) = json(&["-D", "4", "fuzzy-ideals", &format!("{d}/order2_1.json"), "--classify"]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["count"], 15);
    assert_eq!(lines.len(), 1 + lines[0]["non_constant"].as_u64().unwrap() as usize);
    assert!(lines[1..].iter().all(|l| l["h_prime"].get("holds").is_some()));
}
