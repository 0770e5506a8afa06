use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cokasch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cokasch")).args(args).output().expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn example_workspace() -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces/t2f2.json");
    p.to_str().unwrap().to_string()
}

#[test]
fn e11r_is_not_co_kasch() {
    let out = cokasch(&["check-cokasch", "--module", "e11R", "--format", "json"]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["verdict"], false);
    assert_eq!(r["witness"]["kind"], "subfactor");
    assert_eq!(r["witness"]["simple"], 1);
}

#[test]
fn cartan_text_output() {
    let out = cokasch(&["cartan", "--ring", "T2F2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("cartan T2F2: false\n"), "{text}");
    assert!(text.contains("matrix: [[1,1],[0,1]]"), "{text}");
}

#[test]
fn verify_one_proposition() {
    let out = cokasch(&["verify", "--prop", "3.10", "--seed", "7", "--budget", "10", "--format", "json"]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["verdict"], true);
    assert_eq!(r["details"]["results"][0]["rings"], 15);
    assert_eq!(r["timings"], Value::Null);
}

#[test]
fn verify_restricted_to_one_ring() {
    let out = cokasch(&["verify", "--prop", "3.9", "--ring", "T2F2", "--budget", "0", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json_lines(&out)[0]["details"]["results"][0]["rings"], 1);
    assert!(!cokasch(&["verify", "--ring", "nope"]).status.success());
}

#[test]
fn unknown_targets_fail_the_run() {
    let out = cokasch(&["cartan", "--ring", "nope", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_lines(&out)[0]["details"]["error"].as_str().unwrap().contains("nope"));
    assert_eq!(cokasch(&["verify", "--prop", "9.9", "--budget", "0"]).status.code(), Some(1));
}

#[test]
fn bad_workspace_reports_a_location() {
    let dir = std::env::temp_dir().join(format!("cokasch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{ "rings": { "R": { "orders": [2], "mul": [[[1]]], "one": [0] } } }"#).unwrap();
    let out = cokasch(&["--workspace", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.contains("rings.R"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn example_workspace_runs() {
    let ws = example_workspace();
    let out = cokasch(&["--workspace", &ws, "--budget", "4", "--format", "json", "run"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 14);
    let find = |task: &str, target: &str| reports.iter().find(|r| r["task"] == task && r["target"] == target).unwrap().clone();
    assert_eq!(find("check-cokasch", "e11R")["verdict"], false);
    assert_eq!(find("check-cokasch", "e22R")["verdict"], true);
    assert_eq!(find("witness-hring", "T2F2")["details"]["isomorphic_to_cover"], true);
    assert_eq!(find("check-z", "divisible")["witness"]["p"], 5);
    assert_eq!(find("check-hring", "Z4")["verdict"], true);
}

#[test]
fn timings_are_opt_in() {
    let out = cokasch(&["check-z", "--zmodule", "Z + Q", "--timings", "--format", "json"]);
    assert!(json_lines(&out)[0]["timings"]["millis"].is_number());
}
