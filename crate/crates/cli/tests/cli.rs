use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbigw")).args(args).output().expect("spawn orbigw")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn census_of_p46() {
    let v = json(&["census", "--weights", "4,6"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let ages: Vec<&str> = rows.iter().map(|r| r["age"].as_str().unwrap()).collect();
    assert_eq!(ages, ["0/1", "0/1", "1/2", "1/2", "2/3", "1/3", "2/3", "1/3"]);
}

#[test]
fn census_table_uses_denominator() {
    let out = run(&["--format", "table", "census", "--weights", "4,6", "--denominator", "12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6/12") && text.contains("8/12") && text.contains("4/12"), "{text}");
}

#[test]
fn ring_verify_passes() {
    let out = run(&["ring", "verify", "--weights", "4,6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn no_maps_from_a_third_twisted_point() {
    let v = json(&["maps", "solve", "--weights", "4,6", "--degree", "1", "--third-order", "2"]);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["census"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--weights", "0,3"]).status.code(), Some(2));
    assert_eq!(run(&["ring", "verify", "--weights", "4"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["ring", "constants", "--weights", "6,10", "--truncate", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let seed = ["correlator", "seed", "--weights", "4,6", "--truncate", "2"];
    assert_eq!(run(&seed).stdout, run(&seed).stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("orbigw-cli-test-{}.json", std::process::id()));
    let out = run(&["census", "--weights", "2,3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written.as_array().unwrap().len(), 4);
    std::fs::remove_file(path).ok();
}

#[test]
fn p1_check_is_clean() {
    let out = run(&["correlator", "p1", "--max-beta", "2", "--check"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn line_two_point_invariant() {
    let v = json(&["correlator", "reduce", "--weights", "1,1", "--insertions", "pt@one_dim:0,pt@one_dim:0", "--beta", "1"]);
    assert_eq!(v["value"], "1/1");
}

#[test]
fn wdvv_single_quadruple() {
    let v = json(&[
        "correlator", "wdvv", "--weights", "4,6", "--beta", "1",
        "--four", "1@one_dim:0,pt@one_dim:0,1@point0:1,1@point_inf:2",
    ]);
    assert_eq!(v["residual"], "0/1");
}
