use std::process::{Command, Output};

use serde_json::Value;

fn fuscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuscat"))
        .args(args)
        .output()
        .expect("run fuscat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = fuscat(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn fpdim_prints_ten_significant_digits() {
    let o = fuscat(&["fpdim", "fibonacci"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1: 1.000000000\ntau: 1.618033989\ncategory_dim: 3.618033989\n");
}

#[test]
fn catalog_show_writes_a_loadable_file() {
    let o = fuscat(&["catalog", "show", "ising"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ising.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = json(&["validate", path.to_str().unwrap()]);
    assert_eq!(v["valid"], true);
    let list = json(&["catalog", "list"]);
    assert!(list.as_array().unwrap().len() >= 6);
}

#[test]
fn center_and_centralizer() {
    assert_eq!(json(&["center", "svec"])["mueger_center"], serde_json::json!(["1", "psi"]));
    assert_eq!(json(&["center", "toric_code"])["symmetric"], false);
    let v = json(&["centralizer", "toric_code", "--subset", "e"]);
    assert_eq!(v["centralizer"], serde_json::json!(["1", "e"]));
}

#[test]
fn classify_over_declared_and_explicit_base() {
    let v = json(&["classify", "rep_z2_over_rep_z2"]);
    assert_eq!(v["is_umtc_over_E"], true);
    assert_eq!(v["base"], "rep_z2");
    let v = json(&["classify", "fibonacci"]);
    assert_eq!(v["is_umtc_over_E"], true);
    let v = json(&["classify", "ising_over_rep_z2"]);
    assert_eq!(v["is_over_base"], false);
}

#[test]
fn hom_reports_class_and_dual_swap() {
    let v = json(&["hom", "ising", "--from", "sigma", "--to", "sigma,sigma,sigma"]);
    assert_eq!(v["internal_hom"], serde_json::json!({"1": 2}));
    assert_eq!(v["hom_dim"], 2);
    assert_eq!(v["dual_swap"], true);
}

#[test]
fn fh_inline_and_surface_file_agree() {
    let inline = json(&["fh", "ising", "--genus", "2"]);
    assert_eq!(inline["gsd"], 10);
    assert_eq!(inline["invariant"], serde_json::json!({"1": 10}));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    std::fs::write(&path, r#"{"variant": "closed", "genus": 2, "defects": []}"#).unwrap();
    let file = json(&["fh", "ising", "--surface", path.to_str().unwrap()]);
    assert_eq!(file, inline);
}

#[test]
fn fh_defects_and_handle_override() {
    let v = json(&["fh", "ising", "--defect", "sigma", "--defect", "sigma"]);
    assert_eq!(v["gsd"], 1);
    let v = json(&["fh", "rep_z2_over_rep_z2", "--genus", "3", "--handle", "1"]);
    assert_eq!(v["gsd"], 1);
    let o = fuscat(&["fh", "rep_z2_over_rep_z2", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn cylinder_dimension_condition() {
    let v = json(&["fh", "ising", "--cylinder", "--defect-fpdim", "4"]);
    assert_eq!(v["dimension_condition"], true);
    let o = fuscat(&["fh", "ising", "--cylinder", "--defect-fpdim", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn morita_json_verdicts() {
    let v = json(&["morita", "fibonacci", "ising"]);
    assert_eq!(v["verdict"], "not_equivalent");
    assert!(v["witness"].as_str().unwrap().starts_with("FPdim"));
    assert_eq!(json(&["morita", "ising", "toric_code"])["verdict"], "possibly_equivalent");
}

#[test]
fn usage_and_missing_inputs() {
    assert_eq!(fuscat(&["fpdim"]).status.code(), Some(64));
    assert_eq!(fuscat(&["--tol", "-1", "center", "ising"]).status.code(), Some(64));
    assert_eq!(fuscat(&["fpdim", "no_such_thing"]).status.code(), Some(2));
    assert_eq!(fuscat(&["hom", "ising", "--from", "bogus", "--to", "1"]).status.code(), Some(3));
}

#[test]
fn invalid_ring_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // a*a = a: no dual for a
    std::fs::write(
        &path,
        r#"{"name": "bad", "simples": ["1", "a"], "unit": "1", "fusion": [["a", "a", "a", 1]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = fuscat(&["--json", "validate", p]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert_eq!(fuscat(&["fpdim", p]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [&["fh", "toric_code", "--genus", "3"][..], &["classify", "ising"], &["catalog", "list"]] {
        assert_eq!(stdout(&fuscat(args)), stdout(&fuscat(args)));
    }
}
