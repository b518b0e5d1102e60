use assert_cmd::Command;
use serde_json::Value;
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::cargo_bin("necklace").unwrap().args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stdout)
}

/// Vertex and edge counts of an `sset.v1` document.
fn counts(s: &Value) -> Vec<usize> {
    let gens = s["generators"].as_array().unwrap();
    let top = gens.iter().map(|g| g["dim"].as_u64().unwrap() as usize).max().unwrap_or(0);
    (0..=top).map(|d| gens.iter().filter(|g| g["dim"] == d).count()).collect()
}

#[test]
fn hom_across_the_two_simplex_is_an_interval() {
    let (code, v, _) = run(&["hom", "--base", &fixture("delta2.bisset.json"), "--from", "0", "--to", "2"]);
    assert_eq!(code, 0);
    assert_eq!(counts(&v["result"]["hom"]), vec![2, 1]);
    assert_eq!(v["result"]["stabilization"]["exact"], true);
    assert_eq!(v["report"]["schema"], "check.v1");
}

#[test]
fn hom_in_the_discrete_product_is_the_vertical_factor() {
    let (code, v, _) = run(&["hom", "--base", &fixture("lf1_delta1.bisset.json"), "--from", "0|0", "--to", "1|0"]);
    assert_eq!(code, 0);
    assert_eq!(counts(&v["result"]["hom"]), vec![2, 1]);
}

#[test]
fn hom_against_the_arrow_is_empty() {
    let (code, v, _) = run(&["hom", "--base", &fixture("delta1.bisset.json"), "--from", "1", "--to", "0"]);
    assert_eq!(code, 0);
    assert!(v["result"]["hom"]["generators"].as_array().unwrap().is_empty());
}

#[test]
fn a_loop_is_rejected_with_a_witness() {
    let (code, v, _) = run(&["hom", "--base", &fixture("loop.bisset.json"), "--from", "v", "--to", "v"]);
    assert_eq!(code, 3);
    assert!(v["witness"].as_str().unwrap().contains("loop"));
    let (code, _, _) = run(&["straighten", "--base", &fixture("loop.bisset.json"), "--total", &fixture("delta1_over_delta1.bisset.json")]);
    assert_eq!(code, 3);
}

#[test]
fn malformed_input_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema": "bisset.v1", "dim_bound": [0, 0], "generators": [{"id": "a"}]}"#).unwrap();
    let (code, _, _) = run(&["hom", "--base", bad.to_str().unwrap(), "--from", "a", "--to", "a"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["hom", "--base", &fixture("delta3.sset.json"), "--from", "0", "--to", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn straightening_the_identity_of_the_arrow() {
    let args = ["straighten", "--base", &fixture("delta1.bisset.json"), "--total", &fixture("delta1_over_delta1.bisset.json"), "--certify"];
    let (code, v, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["schema"], "presheaf.v1");
    let values = v["result"]["values"].as_array().unwrap();
    assert_eq!(counts(&values[0]), vec![2, 1]);
    assert_eq!(counts(&values[1]), vec![1]);
    let checks = v["report"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().any(|c| c.get("certificate").is_some()));
}

#[test]
fn straightening_a_vertical_object_over_a_point() {
    let args = ["straighten", "--base", &fixture("delta0.bisset.json"), "--total", &fixture("f0_bd2_over_delta0.bisset.json"), "--at", "0"];
    let (code, v, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(counts(&v["result"]["value"]), vec![3, 3]);
}

#[test]
fn necklace_poset_as_dot() {
    let out = Command::cargo_bin("necklace")
        .unwrap()
        .args(["necklaces", "--base", &fixture("delta3.sset.json"), "--from", "0", "--to", "3", "--emit", "dot"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    // tnd(Δ[3], 0, 3) has one necklace per pair of nested vertex sets J ⊆ V
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count();
    assert_eq!(nodes, 9);
}

#[test]
fn necklace_suite_passes_and_is_reproducible() {
    let (code, v, first) = run(&["verify", "--suite", "necklace", "--seed", "3"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["report"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"|Pair(0,3)| = 9"));
    let (_, _, second) = run(&["verify", "--suite", "necklace", "--seed", "3"]);
    assert_eq!(first, second);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let (code, _, _) = run(&["verify", "--suite", "nope"]);
    assert_eq!(code, 2);
}
