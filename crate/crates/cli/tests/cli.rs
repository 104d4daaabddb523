use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sally-lab"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sally-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn in_file(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn length_of_maximal_ideal() {
    let out = run_stdin(&["length", "--json"], r#"{"ambient": {"kind": "polynomial", "d": 2}, "ideal": [[1,0],[0,1]]}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["colength"], 1);
}

#[test]
fn coeffs_of_depth_zero_example() {
    let f = in_file("ex37.json");
    let out = run(&["coeffs", "--in", &f, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["e"], serde_json::json!([49, 21, 0]));
    assert_eq!(v["postulation"], 1);
}

#[test]
fn depth_of_semigroup_example() {
    let f = in_file("ex38_s1.json");
    let out = run(&["depth", "--in", &f, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(1), Some(1)));
    assert!(!v["justifications"].as_array().unwrap().is_empty());
}

#[test]
fn verify_thm33_reports_slack_three() {
    let f = in_file("ex37.json");
    let out = run(&["verify", "thm33", "--in", &f, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["slack"], "3");
    assert_eq!((v["depth_lower"].as_u64(), v["depth_upper"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn expect_equality_exit_codes() {
    let f = in_file("ex37.json");
    assert_eq!(run(&["verify", "thm33", "--in", &f, "--expect-equality"]).status.code(), Some(1));
    let f = in_file("maximal.json");
    let out = run(&["verify", "northcott", "--in", &f, "--expect-equality", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["slack"], "0");
    assert_eq!(json(&out)["equality"], true);
}

#[test]
fn final_example_fixture() {
    let out = run(&["verify", "thm310", "--fixture", "final-example", "--m", "1", "--d", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["slack"], "1/2");
    assert_eq!(v["depth_upper"], 0);
}

#[test]
fn hypothesis_failure_exits_three() {
    let f = in_file("ex38_s1.json");
    let out = run(&["verify", "prop39", "--in", &f]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Q ∩ I^2 = QI"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run_stdin(&["length"], "{not json").status.code(), Some(2));
    let unknown = r#"{"ambient": {"kind": "polynomial", "d": 2}, "ideal": [[1,0],[0,1]], "colour": 1}"#;
    assert_eq!(run_stdin(&["length"], unknown).status.code(), Some(2));
    let not_primary = r#"{"ambient": {"kind": "polynomial", "d": 2}, "ideal": [[1,0]]}"#;
    assert_eq!(run_stdin(&["length"], not_primary).status.code(), Some(2));
    assert_eq!(run(&["verify", "thm99", "--fixture", "final-example"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn module_table_from_input() {
    let f = in_file("module_ex38.json");
    let out = run(&["verify", "thm11a", "--in", &f, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equality"], true);
    assert_eq!(v["certificate"]["holds"], true);
}

#[test]
fn worked_examples_pass() {
    for args in [
        vec!["paper-examples", "ex3.7"],
        vec!["paper-examples", "ex3.8", "--s", "3"],
        vec!["paper-examples", "final", "--m", "2", "--d", "3"],
        vec!["paper-examples", "ex2.7"],
        vec!["paper-examples", "lemma3.6", "--t", "4"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    }
}

#[test]
fn final_example_constants_for_m2_d3() {
    let out = run(&["paper-examples", "final", "--m", "2", "--d", "3", "--json"]);
    let v = json(&out);
    let e = v["checks"].as_array().unwrap().iter().find(|c| c["quantity"] == "e").unwrap();
    assert_eq!(e["actual"], serde_json::json!([9, 12, 4, 0]));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let f = in_file("ex37.json");
    for cmd in ["sally", "depth", "coeffs"] {
        let a = run(&[cmd, "--in", &f, "--json"]);
        let b = run(&[cmd, "--in", &f, "--json"]);
        assert_eq!(a.stdout, b.stdout);
        let text = String::from_utf8(a.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text);
    }
    let a = run(&["verify", "thm310", "--fixture", "final-example", "--json"]);
    let text = String::from_utf8(a.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text);
}

#[test]
fn text_mode_prints_tables() {
    let f = in_file("ex37.json");
    let out = run(&["hilbert", "--in", &f, "--N", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("l(A/I^(n+1))"));
    assert!(text.contains("105"));
}
