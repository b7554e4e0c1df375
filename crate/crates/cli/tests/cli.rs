use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn edgecsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgecsp")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = edgecsp(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (out.status.code().unwrap(), json)
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn solve_k3_agrees_with_the_oracle() {
    let (code, out) = run(&["solve", &path("k3.json"), "--verify-oracle"]);
    assert_eq!(code, 0);
    assert_eq!(out["count"], 1);
    assert_eq!(out["oracle"]["agree"], true);
    assert_eq!(out["schema_version"], 1);
    assert_eq!(out["labeling"].as_object().unwrap().len(), 6);
}

#[test]
fn output_is_deterministic() {
    let a = edgecsp(&["solve", &path("k3.json")]);
    let b = edgecsp(&["solve", &path("k3.json"), "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let a = edgecsp(&["solve-coverable", &path("mixed.json")]);
    let b = edgecsp(&["solve-coverable", &path("mixed.json"), "--threads", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn trace_lines_are_events() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let (code, _) = run(&["solve", &path("k3.json"), "--trace", trace.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&trace).unwrap();
    let events: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["event"].as_str().unwrap().to_string())
        .collect();
    assert!(events.contains(&"blossom".to_string()));
    assert!(events.contains(&"contract".to_string()));
    assert_eq!(events.last().map(String::as_str), Some("optimal"));
}

#[test]
fn check_relation_flags() {
    let (code, out) = run(&["check-relation", &path("interference.json")]);
    assert_eq!(code, 0);
    assert_eq!(out["delta_matroid"], true);
    assert_eq!(out["even"], false);
    assert_eq!(out["interference_free"], false);
    assert_eq!(out["self_complementary"], false);
    let (_, out) = run(&["check-relation", &path("even2.json")]);
    assert_eq!(out["even"], true);
    assert_eq!(out["self_complementary"], true);
    assert_eq!(out["d_transform_even"], true);
}

#[test]
fn check_cover_supplied_and_built_in() {
    let rel = path("interference.json");
    let (code, out) = run(&["check-cover", &rel, "--alpha", "111", "--cover", &path("interference_nonzebra_cover.json")]);
    assert_eq!((code, &out["ok"]), (0, &Value::Bool(true)));
    // The single tuple 111 misses what 000 reaches.
    let (code, out) = run(&["check-cover", &rel, "--alpha", "000", "--cover", &path("interference_nonzebra_cover.json")]);
    assert_eq!(code, 1);
    assert_eq!(out["ok"], false);
    assert_eq!(out["violation"]["item"], 2);
    let (code, out) = run(&["check-cover", &rel, "--alpha", "000", "--class", "zebra"]);
    assert_eq!(code, 0);
    assert_eq!(out["cover"].as_array().unwrap().len(), 4);
    let (code, _) = run(&["check-cover", &rel, "--alpha", "000", "--class", "interference-free"]);
    assert_eq!(code, 1);
    let (code, out) = run(&["check-cover", &rel, "--alpha", "000", "--class", "compact", "--levels", "0,2,3"]);
    assert_eq!((code, &out["ok"]), (0, &Value::Bool(true)));
}

#[test]
fn refusals_exit_one() {
    let (code, _) = run(&["solve", &path("odd_pair.json")]);
    assert_eq!(code, 1);
    let (code, _) = run(&["solve-coverable", &path("odd_pair.json")]);
    assert_eq!(code, 1);
    let (code, _) = run(&["oracle", &path("k3.json"), "--bound", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let bad = bad.to_str().unwrap();
    for cmd in ["solve", "oracle", "check-relation", "realize"] {
        assert_eq!(run(&[cmd, bad]).0, 2, "{cmd}");
    }
    assert_eq!(run(&["solve", "/nonexistent/file.json"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn rejected_covers_exit_three() {
    let (code, _) = run(&["solve-coverable", &path("bad_cover.json")]);
    assert_eq!(code, 3);
}

#[test]
fn coverable_solve() {
    let (code, out) = run(&["solve-coverable", &path("mixed.json"), "--verify-oracle"]);
    assert_eq!(code, 0);
    assert_eq!(out["oracle"]["agree"], true);
}

#[test]
fn oracle_reports_the_optimum() {
    let (code, out) = run(&["oracle", &path("k3.json")]);
    assert_eq!(code, 0);
    assert_eq!(out["count"], 1);
}

#[test]
fn realize_triangle() {
    let (code, out) = run(&["realize", &path("triangle.json")]);
    assert_eq!(code, 0);
    assert_eq!(out["tuples"], serde_json::json!(["001", "010", "100", "111"]));
    assert_eq!(out["even_delta_matroid"], true);
}

#[test]
fn planar_report_verdicts() {
    let (code, out) = run(&["planar-report", &path("even2.json")]);
    assert_eq!(code, 0);
    assert_eq!(out["verdict"], "holds");
    let (_, out) = run(&["planar-report", &path("even2.json"), &path("interference.json")]);
    assert_eq!(out["verdict"], "fails");
}

#[test]
fn fixtures_pass() {
    let (code, out) = run(&["verify-fixtures"]);
    assert_eq!(code, 0);
    assert_eq!(out["failed"], 0);
    assert!(out["fixtures"].as_array().unwrap().len() >= 10);
}

#[test]
fn seed_controls_generation_only() {
    let gen = |seed: &str| edgecsp(&["generate", "--seed", seed, "--kind", "coverable"]).stdout;
    assert_eq!(gen("4"), gen("4"));
    assert_ne!(gen("4"), gen("5"));
    let dir = tempfile::tempdir().unwrap();
    for (i, kind) in ["even", "coverable"].into_iter().enumerate() {
        let file = dir.path().join(format!("{i}.json"));
        let out = edgecsp(&["generate", "--seed", "9", "--kind", kind, "--constraints", "4", "--arity", "3"]);
        std::fs::write(&file, out.stdout).unwrap();
        let cmd = if kind == "even" { "solve" } else { "solve-coverable" };
        let (code, out) = run(&[cmd, file.to_str().unwrap(), "--verify-oracle"]);
        assert_eq!(code, 0);
        assert_eq!(out["oracle"]["agree"], true);
    }
    assert_eq!(run(&["solve", &path("k3.json"), "--seed", "1"]).0, 2);
}
