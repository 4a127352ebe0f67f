use std::path::PathBuf;
use std::process::{Command, Output};

use loopmod::doc::{examples, Workspace};
use loopmod::gmod::is_isomorphic_graded;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json")).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopmod")).args(args).output().expect("binary runs")
}

/// Exit code and parsed JSON report.
fn report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn embedded(rep: &Value) -> Workspace {
    Workspace::parse(&rep["certificates"]["workspace"].to_string()).expect("embedded document parses")
}

#[test]
fn shipped_fixtures_match_the_examples() {
    for name in examples::NAMES {
        let out = run(&["fixture", name]);
        assert!(out.status.success());
        let file = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), file.trim(), "{name}");
        let (code, rep) = report(&["validate", &fixture(name)]);
        assert_eq!(code, 0, "{name}: {rep}");
    }
}

#[test]
fn pauli_invariants() {
    let (code, rep) = report(&["invariants", &fixture("pauli"), "--module", "W"]);
    assert_eq!(code, 0);
    let r = &rep["results"];
    assert_eq!(r["schur_index"], 2);
    assert_eq!(r["inertia_order"], 4);
    assert_eq!(r["center_support"], serde_json::json!([[0, 0]]));
    assert_eq!(r["centralizer_dim"], 4);
    assert_eq!(rep["status"], "ok");
}

#[test]
fn loop_along_the_trivial_subgroup_is_the_identity() {
    let (code, rep) = report(&["loop", &fixture("pauli"), "--module", "W", "--subgroup", "trivial"]);
    assert_eq!(code, 0);
    assert_eq!(rep["results"]["isomorphic_to_input"], true);
    assert!(rep["certificates"]["isomorphism"]["rows"].is_array());
    let ws = embedded(&rep);
    assert!(is_isomorphic_graded(ws.module("L(W)").unwrap(), ws.module("W").unwrap()).is_iso());
}

#[test]
fn loop_of_the_natural_module_is_the_regular_module() {
    let (code, rep) = report(&["loop", &fixture("pauli"), "--module", "V"]);
    assert_eq!(code, 0);
    assert_eq!(rep["results"]["isomorphic_to"], serde_json::json!(["W"]));
    let ws = embedded(&rep);
    assert!(is_isomorphic_graded(ws.module("L(V)").unwrap(), ws.module("W").unwrap()).is_iso());
}

#[test]
fn central_image_round_trips_through_json() {
    let (code, rep) = report(&["central-image", &fixture("pauli"), "--module", "W", "--character", "1,1"]);
    assert_eq!(code, 0, "{rep}");
    let ws = embedded(&rep);
    let v = ws.module("V(W)").unwrap();
    assert_eq!(v.dim(), 2);
    assert!(v.validate().is_valid());
    assert_eq!(rep["results"]["maximal_graded_subfields"], 3);
}

#[test]
fn envelope_and_induction_of_the_natural_module() {
    let (code, rep) = report(&["envelope", "pauli", "--module", "V"]);
    assert_eq!(code, 0, "{rep}");
    let ws = embedded(&rep);
    assert!(is_isomorphic_graded(ws.module("E(V)").unwrap(), ws.module("W").unwrap()).is_iso());
    let (code, rep) = report(&["induce", "pauli", "--module", "V"]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["results"]["phi_psi_identity"], true);
}

#[test]
fn decomposition_of_pauli() {
    let (code, rep) = report(&["decompose", "pauli", "--module", "W"]);
    assert_eq!(code, 0);
    let classes = rep["results"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["multiplicity"], 2);
    assert_eq!(classes[0]["simple_dim"], 2);
}

#[test]
fn counterexamples_exit_with_two() {
    let (code, rep) = report(&["simple", "torus", "--module", "W", "--ungraded"]);
    assert_eq!(code, 2);
    assert_eq!(rep["results"]["simple"], false);
    assert!(rep["certificates"]["simplicity_submodule"]["rows"].is_array());
    let (code, _) = report(&["iso", "pauli", "--module", "W", "--other", "V"]);
    assert_eq!(code, 2);
}

#[test]
fn broken_module_fails_validation() {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("torus")).unwrap()).unwrap();
    let entry = &mut doc["modules"]["Vplus"]["action"][0][3];
    *entry = Value::String("2".into());
    let path = std::env::temp_dir().join(format!("loopmod-broken-{}.json", std::process::id()));
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, rep) = report(&["validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 2, "{rep}");
    assert_eq!(rep["results"]["modules"]["Vplus"]["valid"], false);
}

#[test]
fn split_field_failures_exit_with_three() {
    let (code, rep) = report(&["invariants", "m2rz2"]);
    assert_eq!(code, 3);
    assert_eq!(rep["status"], "undecided");
}

#[test]
fn bad_input_exits_with_four() {
    let path = std::env::temp_dir().join(format!("loopmod-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(4));
    std::fs::remove_file(&path).ok();
    assert_eq!(run(&["invariants", "pauli", "--module", "nope"]).status.code(), Some(4));
    assert_eq!(run(&["invariants", "pauli"]).status.code(), Some(4));
    assert_eq!(run(&["loop", "pauli", "--module", "W", "--subgroup", "nope"]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["fixture", "nope"]).status.code(), Some(4));
}

#[test]
fn generated_documents_are_deterministic_and_valid() {
    let a = run(&["generate", "--seed", "7", "--instances", "4"]);
    let b = run(&["generate", "--seed", "7", "--instances", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let ws = Workspace::parse(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(ws.modules.len(), 4);
    assert!(ws.modules.values().all(|m| m.validate().is_valid()));
}

#[test]
fn selftest_passes_and_reports_counts() {
    let (code, rep) = report(&["selftest", "--seed", "42", "--instances", "50"]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["results"]["failed"], 0);
    let props = rep["certificates"]["properties"].as_array().unwrap();
    assert!(props.len() >= 10);
    for p in props {
        assert_eq!(p["passed"], 50, "{p}");
    }
}
