use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp6"))
        .args(args)
        .output()
        .expect("run dp6")
}

fn arrangement(action: &str, file: &str) -> Output {
    let path = data(file);
    run(&["burniat", action, "--arrangement", path.to_str().unwrap()])
}

fn json(out: &Output) -> Value {
    let stdout = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("bad JSON ({e}):\n{stdout}"))
}

fn rows(v: &Value) -> &Vec<Value> {
    v["results"].as_array().expect("results array")
}

#[test]
fn h0_of_anticanonical_class() {
    let out = run(&["h0", "--", "3", "-1", "-1", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["output"]["h0"], 7);
    assert_eq!(v["output"]["oracle"], 7);
}

#[test]
fn h0_of_difference_of_exceptional_curves() {
    let v = json(&run(&["h0", "--", "0", "1", "-1", "0"]));
    assert_eq!(v["output"]["h0"], 0);
    assert_eq!(v["output"]["reduction"]["steps"][0]["removed"], "e1");
}

#[test]
fn cohomology_of_line_minus_l1() {
    let out = run(&["cohomology", "--", "-2", "2", "0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["output"]["h0"], 0);
    assert_eq!(v["output"]["h1"], 1);
    assert_eq!(v["output"]["h2"], 0);
    assert_eq!(v["output"]["chi"], -1);
}

#[test]
fn wrong_arity_is_a_usage_error() {
    assert_eq!(run(&["h0", "--", "1", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn burniat_invariants_for_valid_arrangement() {
    let out = arrangement("invariants", "valid.json");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["output"]["chi"], 1);
    assert_eq!(v["output"]["K2"], 6);
    assert_eq!(v["output"]["p2"], 7);
    assert_eq!(v["inputs"]["pencil_params"]["P2"][1], "5");
    assert!(rows(&v).iter().all(|r| r["status"] == "pass"));
}

#[test]
fn burniat_build_emits_branch_data() {
    let v = json(&arrangement("build", "valid.json"));
    let d1 = v["output"]["branch_data"]["d1"].as_array().unwrap();
    assert_eq!(d1.len(), 4);
    assert_eq!(d1[2]["label"], "m^2_1");
    assert_eq!(v["output"]["l3"], serde_json::json!([3, 0, -1, -2]));
}

#[test]
fn coordinate_line_is_rejected() {
    let out = arrangement("validate", "zero_param.json");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(rows(&v)[0]["computed"]
        .as_str()
        .unwrap()
        .contains("coordinate line"));
}

#[test]
fn concurrent_triple_is_named() {
    let out = arrangement("invariants", "concurrent.json");
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let msgs: Vec<&str> = rows(&v)
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["computed"].as_str().unwrap())
        .collect();
    assert_eq!(msgs.len(), 1);
    assert!(msgs[0].contains("(1,1,1)"), "{msgs:?}");
}

#[test]
fn malformed_arrangement_reports_field_and_line() {
    let out = arrangement("validate", "bad_rational.json");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pencil_params.P2"), "{err}");
    assert!(err.contains("line"), "{err}");

    let out = arrangement("validate", "truncated.json");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        arrangement("validate", "missing.json").status.code(),
        Some(2)
    );
}

#[test]
fn cover_invariants_for_branch_data_and_numeric_datum() {
    let path = data("burniat_branch.json");
    let v = json(&run(&["cover-invariants", path.to_str().unwrap()]));
    assert_eq!(v["output"]["report"]["p2"], 7);

    let path = data("unramified.json");
    let out = run(&["cover-invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        (v["output"]["chi"].as_i64(), v["output"]["K2"].as_i64()),
        (Some(2), Some(12))
    );
    assert_eq!(v["output"]["exactness"], "bound");
}

#[test]
fn inconsistent_cover_data_fails() {
    for file in ["bad_l1.json", "wrong_root.json"] {
        let path = data(file);
        let out = run(&["cover-invariants", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{file}");
    }
}

#[test]
fn enumerate_cases_passes() {
    let out = run(&["enumerate-cases"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let miyaoka = rows(&v)
        .iter()
        .find(|r| r["citation"] == "Lemma 5.2")
        .expect("Miyaoka row");
    assert_eq!(
        (miyaoka["expected"].as_str(), miyaoka["computed"].as_str()),
        (Some("1"), Some("1"))
    );
}

#[test]
fn verify_paper_is_green_and_deterministic() {
    let first = run(&["verify-paper"]);
    assert_eq!(first.status.code(), Some(0));
    let v = json(&first);
    let moduli = rows(&v)
        .iter()
        .find(|r| r["check"] == "moduli dim")
        .expect("moduli row");
    assert_eq!(moduli["citation"], "Thm 3.4");
    assert_eq!(moduli["computed"], "4");
    for r in rows(&v) {
        assert!(!r["citation"].as_str().unwrap().is_empty());
        assert!(["pass", "recorded-constant"].contains(&r["status"].as_str().unwrap()));
    }
    let second = run(&["verify-paper"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn human_output_is_a_table() {
    let out = run(&["--human", "enumerate-cases"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("command: enumerate-cases"));
    assert!(text.contains("status"));
    assert!(text.contains("0 failed"));
}
