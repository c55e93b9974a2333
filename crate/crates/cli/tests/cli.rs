use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_medial-ldc"))
        .args(args)
        .env("MEDIAL_LDC_THREADS", "0")
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn validate_two() {
    let (code, r, _) = run(&["validate", &fixture("two.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["valid"], true);
    assert_eq!(r["morphisms"]["mix"], Value::Array(vec![]));
}

#[test]
fn validate_names_the_broken_axiom() {
    let (code, r, _) = run(&["validate", &fixture("broken_antisymmetry.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["algebras"]["collapsed"][0]["axiom"], "poset-antisymmetric");
}

#[test]
fn validate_flags_incompatible_morphisms() {
    let (code, r, _) = run(&["validate", &fixture("bad_morphism.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["morphisms"]["lost"][0]["axiom"], "rho-compatible");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["validate", missing.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["validate", &fixture("dangling.json")]).0, 2);
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"algebras\": [").unwrap();
    assert_eq!(run(&["validate", garbled.to_str().unwrap()]).0, 2);
    let dup = dir.path().join("dup.json");
    let text = std::fs::read_to_string(fixture("two.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["objects"][1]["name"] = "top".into();
    std::fs::write(&dup, v.to_string()).unwrap();
    let (code, _, err) = run(&["validate", dup.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("duplicate"));
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn coherence_full_sweep_over_two() {
    let (code, r, _) = run(&["coherence", &fixture("two.json"), "--max-size", "2", "--seed", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["probe_objects"], 18);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["failed"] == 0));
}

#[test]
fn coherence_single_check() {
    let (code, r, _) = run(&["coherence", &fixture("two.json"), "--check", "MIX.lemma"]);
    assert_eq!(code, 0);
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
    assert_eq!(r["checks"][0]["check"], "MIX.lemma");
    assert_eq!(run(&["coherence", &fixture("two.json"), "--check", "nope"]).0, 2);
}

#[test]
fn coherence_reports_a_counterexample_for_a_corrupted_model() {
    let (code, r, _) = run(&["coherence", &fixture("corrupted.json"), "--max-size", "1"]);
    assert_eq!(code, 1);
    let bad = r["checks"].as_array().unwrap().iter().find(|c| c["failed"] != 0).unwrap();
    let f = &bad["failures"][0];
    assert!(!f["objs"].as_array().unwrap().is_empty());
    assert!(f["entry"].is_array() || f["error"].is_string());
}

#[test]
fn compactness_over_the_trivial_algebra() {
    let (code, r, _) = run(&["coherence", &fixture("trivial.json"), "--check", "Compactness.LR"]);
    assert_eq!(code, 0);
    assert_eq!(r["skipped"], Value::Array(vec![]));
    assert_eq!(run(&["coherence", &fixture("two.json"), "--check", "Compactness.LR"]).0, 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["coherence", &fixture("two.json"), "--check", "MLDC.1a", "--seed", "5"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn derive_medial() {
    let (code, r, _) = run(&["derive", &fixture("medial.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["end"], "(a+c)*(b+d)");
}

#[test]
fn derive_reports_the_failing_step() {
    let (code, r, _) = run(&["derive", &fixture("mismatched.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["step"], 1);
    assert!(r["error"].as_str().unwrap().contains("medial"));
}

#[test]
fn derive_interprets_over_two() {
    let (code, r, _) = run(&[
        "derive",
        &fixture("two_steps.json"),
        "--interpret",
        &fixture("two.json"),
        "--assign",
        "a=low_chain,b=low_chain,c=top",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["end"], "(a+b)+c");
    assert_eq!(r["valid_2"], true);
    assert_eq!(r["morphism"]["rel"].as_array().unwrap().len(), 4);
    assert_eq!(r["morphism"]["violations"], Value::Array(vec![]));
    let (code, r, _) = run(&[
        "derive",
        &fixture("medial.json"),
        "--interpret",
        &fixture("two.json"),
        "--assign",
        "a=top,b=bot,c=bot,d=top",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["morphism"]["rel"], serde_json::json!([[true]]));
}

#[test]
fn derive_needs_every_atom() {
    let args = ["derive", &fixture("medial.json"), "--interpret", &fixture("two.json"), "--assign", "a=top"];
    assert_eq!(run(&args).0, 2);
    assert_eq!(run(&["derive", &fixture("medial.json"), "--assign", "a=top"]).0, 2);
}

#[test]
fn fox_on_the_boolean_square() {
    let (code, r, _) = run(&["bimonoid", &fixture("boolean_square.json"), "fox"]);
    assert_eq!(code, 0);
    assert_eq!(r["bimonoids"], 4);
    assert_eq!(r["laws"]["eta_bijective"], true);
    assert_eq!(run(&["bimonoid", &fixture("broken_antisymmetry.json"), "fox"]).0, 2);
}

#[test]
fn enumerate_on_top() {
    let (code, r, _) = run(&["bimonoid", &fixture("two.json"), "enumerate", "--object", "top"]);
    assert_eq!(code, 0);
    assert!(r[0]["bimonoids"].as_u64().unwrap() >= 1);
    assert_eq!(r[0]["object"]["name"], "top");
    assert_eq!(r[0]["structures"][0]["delta"], serde_json::json!([[true]]));
}

#[test]
fn universal_and_products_pass_on_points() {
    let (code, r, _) = run(&["bimonoid", &fixture("two.json"), "universal", "--object", "top", "--object", "bot"]);
    assert_eq!(code, 0);
    assert!(r["laws"]["cases"].as_u64().unwrap() > 0);
    let (code, r, _) = run(&["bimonoid", &fixture("two.json"), "product"]);
    assert_eq!(code, 0);
    assert_eq!(r["object"], serde_json::json!(["top", "bot", "low_chain"]));
}

#[test]
fn universal_fails_with_a_mutated_pairing() {
    let (code, r, _) = run(&["bimonoid", &fixture("mutated_pairing.json"), "universal"]);
    assert_eq!(code, 1);
    assert!(r["laws"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn mu01_over_iso_classes() {
    let (code, r, _) = run(&["bimonoid", &fixture("trivial.json"), "mu01"]);
    assert_eq!(code, 0);
    let n = r["bimonoids"].as_u64().unwrap();
    assert_eq!(r["laws"]["quadruples"], n.pow(4));
}

#[test]
fn unknown_objects_are_input_errors() {
    assert_eq!(run(&["bimonoid", &fixture("two.json"), "enumerate", "--object", "nowhere"]).0, 2);
}
