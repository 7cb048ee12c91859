use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ratknot(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratknot"))
        .args(args)
        .env("RATKNOT_CACHE", cache.join("census.json"))
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = ratknot(args, dir.path());
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out) = run(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn wn_example() {
    assert_eq!(run(&["wn", "2", "-4", "2"]), (0, "C(2,-4,-2,2,2,4,-2)\n".into()));
}

#[test]
fn if_eval_example() {
    assert_eq!(run(&["if-eval", "C(2,-4,-2)"]), (0, "-16/7\n".into()));
    assert_eq!(run(&["if-eval", "2", "-4", "-2"]), (0, "-16/7\n".into()));
}

#[test]
fn conversions() {
    assert_eq!(run(&["positive-form", "16/7"]).1, "C(2,3,2)\n");
    assert_eq!(run(&["even-form", "7/2"]).1, "C(-2,4)\n");
    assert_eq!(run(&["fraction", "C(3)"]).1, "3\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["wn", "2", "3"]).0, 2);
    assert_eq!(run(&["no-such-verb"]).0, 2);
    assert_eq!(run(&["wn"]).0, 2);
    assert_eq!(run(&["if-eval", "C(2,"]).0, 2);
    assert_eq!(run(&["invariants", "8/3"]).0, 2);
    assert_eq!(run(&["wn", "2", "--format", "csv"]).0, 2);
    assert_eq!(run(&["det-solve", "9", "1", "--n", "2", "--signs", "+"]).0, 2);
}

#[test]
fn failed_checks_exit_1() {
    let (code, out) = run(&["similar", "5/2", "--degree", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("fails"));
    assert_eq!(run(&["similar", "1/0", "--degree", "4"]).0, 0);
}

#[test]
fn json_carries_schema_and_seed() {
    let (code, v) = json(&["invariants", "3/2", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["command"], "invariants");
    assert_eq!(v["jones"]["text"], "-t^-4+t^-3+t^-1");
    assert_eq!(v["signature"], 2);
    assert_eq!(v["determinant"], 3);
}

#[test]
fn big_integers_stay_exact() {
    let (_, v) = json(&["if-eval", "C(1000000000000,1000000000000,1000000000000)"]);
    assert_eq!(v["value"], "1000000000000000000000002000000000000/1000000000000000000000001");
    assert_eq!(v["sequence"][0].to_string(), "1000000000000");
}

#[test]
fn machine_output_is_deterministic() {
    for args in [
        &["verify-trivial", "2", "-2", "4", "--seed", "5"][..],
        &["realize-homology", "45", "3", "5"][..],
        &["family", "2", "-2", "--c", "4"][..],
    ] {
        let a = json(args);
        let b = json(args);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.0, 0, "{args:?}");
    }
}

#[test]
fn homology_realization_reports_groups() {
    let (code, v) = json(&["realize-homology", "45", "3", "15", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["target"], "Z_3 + Z_15");
    assert_eq!(v["achieved"], "Z_3 + Z_15");
    assert_eq!(v["summands"].as_array().unwrap().len(), 2);
}

#[test]
fn det_solve_hits_residue() {
    let (code, v) = json(&["det-solve", "25", "-3", "--n", "3", "--signs", "+-+"]);
    assert_eq!(code, 0);
    let det: i64 = v["det"].to_string().parse().unwrap();
    assert_eq!(det.rem_euclid(25), 22);
    assert_eq!(v["unknotting_one"], true);
}

#[test]
fn census_csv_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let first = ratknot(&["census", "--max-k", "64", "--format", "csv"], dir.path());
    assert_eq!(first.status.code(), Some(0));
    let text = String::from_utf8(first.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,d_k,bound,pass"));
    assert_eq!(lines.next(), Some("1,2,1,true"));
    assert_eq!(lines.next(), Some("2,4,2,true"));
    assert_eq!(text.lines().count(), 65);
    assert!(dir.path().join("census.json").exists());
    let again = ratknot(&["census", "--max-k", "64", "--format", "csv"], dir.path());
    assert_eq!(again.stdout, text.as_bytes());

    let explicit = dir.path().join("other.json");
    let out = ratknot(&["census", "--max-k", "8", "--cache", explicit.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(explicit.exists());
}

#[test]
fn census_enumeration_comparison() {
    let (code, v) = json(&["census", "--max-k", "24", "--enumerate", "8"]);
    assert_eq!(code, 0);
    let rows = v["enumeration"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["recursion"], 2);
    assert_eq!(rows[0]["enumerated"], 0);
}

#[test]
fn full_verification_reports_every_criterion() {
    let (code, v) = json(&["verify-paper", "--n", "3", "--seed", "7", "--jobs", "2"]);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    let all = criteria.iter().all(|c| c["passed"] == true);
    assert_eq!(code, if all { 0 } else { 1 });
    assert_eq!(v["ok"], all);
}
