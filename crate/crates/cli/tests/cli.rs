use std::process::{Command, Output};

use serde_json::Value;

fn dfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfusion")).args(args).output().expect("spawn dfusion")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn dim(ch: &Value) -> i64 {
    ch["terms"].as_array().unwrap().iter().map(|t| t["mult"].as_i64().unwrap()).sum()
}

#[test]
fn char_demazure_level_one() {
    let out = dfusion(&["char", "A1", "--demazure", "1", "2w1"]);
    assert_eq!(out.status.code(), Some(0));
    let ch = json(&out);
    assert_eq!(ch["level"], 1);
    assert_eq!(dim(&ch), 4);
}

#[test]
fn char_demazure_trivial() {
    let ch = json(&dfusion(&["char", "A1", "--demazure", "3", "0"]));
    let terms = ch["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["wt"], serde_json::json!([0]));
    assert_eq!(terms[0]["q"], 0);
    assert_eq!(terms[0]["mult"], 1);
}

#[test]
fn char_weyl_adjoint() {
    let ch = json(&dfusion(&["char", "A2", "--weyl", "w1+w2"]));
    assert_eq!(dim(&ch), 8);
    let zero = ch["terms"].as_array().unwrap().iter().find(|t| t["wt"] == serde_json::json!([0, 0])).unwrap();
    assert_eq!(zero["mult"], 2);
}

#[test]
fn char_generalized_chain() {
    let ch = json(&dfusion(&["char", "A1", "--chain", "2,1", "--coweights", "wv1,wv1"]));
    assert_eq!(dim(&ch), 6);
}

#[test]
fn fusion_two_naturals() {
    let out = dfusion(&["fusion", "A1", "V(w1)", "V(w1)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["filtration"]["stages"], serde_json::json!([3, 4]));
    assert_eq!(v["dim"], 4);
    let pretty = dfusion(&["fusion", "A1", "V(w1)", "V(w1)", "--format", "pretty"]);
    assert!(String::from_utf8(pretty.stdout).unwrap().starts_with("V(2w1) + q*V(0)\n"));
}

#[test]
fn fusion_single_factor_passthrough() {
    let v = json(&dfusion(&["fusion", "A1", "V(w1)"]));
    assert_eq!(v["filtration"]["stages"], serde_json::json!([2]));
    assert_eq!(v["dim"], 2);
}

#[test]
fn fusion_demazure_factors() {
    let v = json(&dfusion(&["fusion", "A1", "D(2,2w1)", "D(1,1w1)"]));
    assert_eq!(v["dim"], 6);
}

#[test]
fn verify_qsystem_passes() {
    let out = dfusion(&["verify", "A1", "qsystem", "--lmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["instances"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["fusion", "A2", "V(w1)", "V(w2)", "--seed", "7"];
    let a = dfusion(&args);
    let b = dfusion(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "A1", "associativity"];
    assert_eq!(dfusion(&args).stdout, dfusion(&args).stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("dfusion-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("char.tsv");
    let out = dfusion(&["char", "A1", "--weyl", "2w1", "--format", "tsv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn error_kind(out: &Output) -> String {
    json(out)["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frob"],
        vec!["char", "A1"],
        vec!["char", "A1", "--weyl", "w1", "--format", "xml"],
        vec!["verify", "A1", "no-such-claim"],
        vec!["char", "Q7", "--weyl", "0"],
        vec!["char", "A1", "--weyl", "w1+w9"],
        vec!["fusion", "A1", "W(w1)"],
        vec!["fusion", "A1", "D(2,w1)"],
        vec!["fusion", "A1", "V(w1)", "V(w1)", "--points", "1,1"],
    ] {
        let out = dfusion(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!error_kind(&out).is_empty());
    }
}

#[test]
fn level_zero_factor_needs_zero_weight() {
    let out = dfusion(&["fusion", "A1", "D(0,w1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "domain");
}

#[test]
fn help_exits_zero() {
    assert_eq!(dfusion(&["--help"]).status.code(), Some(0));
}
