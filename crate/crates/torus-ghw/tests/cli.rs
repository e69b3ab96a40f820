//! End-to-end tests of the `torus-ghw` binary: output shapes, golden rows,
//! exit codes, and the cap/env plumbing.

use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_torus-ghw");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn binary")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(BIN)
        .args(args)
        .env(key, value)
        .output()
        .expect("spawn binary")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout JSON")
}

fn stderr_error(out: &Output) -> Value {
    let v: Value =
        serde_json::from_slice(&out.stderr).expect("stderr should be one-line error JSON");
    assert_eq!(v["schema"], 1);
    v["error"].clone()
}

#[test]
fn hierarchy_json_report() {
    let out = run(&["hierarchy", "--torus", "4", "3", "--d", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["command"], "hierarchy");
    assert_eq!(v["point_set"]["kind"], "torus");
    assert_eq!(v["n"], 9);
    assert_eq!(v["k"], 3);
    assert_eq!(v["reg"], 4);
    assert_eq!(v["agreement"], "agree");
    let weights: Vec<u64> = v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_u64().unwrap())
        .collect();
    assert_eq!(weights, vec![6, 8, 9]);
}

#[test]
fn table_csv_golden_row() {
    let out = run(&["table", "--torus", "5", "3", "--dmax", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(
        lines[0],
        "d,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10,d11,d12,d13,d14,d15,d16"
    );
    assert_eq!(lines[3], "3,4,7,8,10,11,12,13,14,15,16,,,,,,");
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["hierarchy", "--torus", "5", "3", "--d", "2", "--method", "all"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"\n"));
}

#[test]
fn zeros_reports_common_zero_count() {
    let out = run(&["zeros", "--torus", "5", "3", "--d", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["common_zeros"], 5);
    assert_eq!(v["z2"], 5);
    assert_eq!(v["agreement"], "agree");
    // The forms are echoed in parseable text.
    assert!(v["f"].as_str().unwrap().contains("X1"));

    let out = run(&["zeros", "--torus", "5", "3", "--d", "4", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("common zeros: 12"));
}

#[test]
fn zeros_rejects_out_of_range_degree() {
    let out = run(&["zeros", "--torus", "5", "3", "--d", "99"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "degree_out_of_range");
}

#[test]
fn verify_small_grid_passes() {
    let out = run(&["verify", "--grid", "3", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verify: PASS"), "{text}");
}

#[test]
fn oracle_infeasible_reports_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf181.exp");
    std::fs::write(&path, "181\n0 0 0\n90 0 0\n0 36 0\n0 0 20\n").unwrap();
    let out = run(&[
        "hierarchy",
        "--toric",
        path.to_str().unwrap(),
        "--d",
        "5",
        "--method",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "oracle_infeasible");
    assert_eq!(err["n"], 90);
    assert_eq!(err["cap"], 24);
}

#[test]
fn hilbert_on_toric_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf181.exp");
    std::fs::write(&path, "# one-line comment\n181\n0 0 0\n90 0 0\n0 36 0\n0 0 20\n").unwrap();
    let out = run(&["hilbert", "--toric", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 90);
    assert_eq!(v["reg"], 13);
    assert_eq!(v["a_inv"], 12);
    assert_eq!(v["values"][5], 35);
    assert_eq!(v["values"][7], 55);
}

#[test]
fn code_export_shapes() {
    let out = run(&["code", "export", "--torus", "3", "3", "--d", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["q"], 3);
    assert_eq!(v["n"], 4);
    assert_eq!(v["k"], 3);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));

    let out = run(&["code", "export", "--torus", "3", "3", "--d", "1", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // Header then one row per line.
    assert!(text.lines().count() >= 4);
}

#[test]
fn export_to_file_via_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "hierarchy",
        "--torus",
        "4",
        "3",
        "--d",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["d"], 2);
}

#[test]
fn usage_errors_exit_two() {
    // Zero is outside the valid range clap enforces.
    let out = run(&["table", "--torus", "5", "3", "--dmax", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // A point set is required…
    let out = run(&["hierarchy", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // …and only one may be given.
    let out = run(&[
        "hierarchy", "--torus", "5", "3", "--bipartite", "5", "2", "2", "--d", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_cap_is_read_and_flag_overrides_it() {
    let args = ["hierarchy", "--torus", "5", "3", "--d", "2", "--method", "oracle"];
    let out = run_env(&args, "TORUS_GHW_MAX_N", "4");
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "oracle_infeasible");
    assert_eq!(err["cap"], 4);

    let mut with_flag: Vec<&str> = args.to_vec();
    with_flag.extend_from_slice(&["--max-n-exhaustive", "16"]);
    let out = run_env(&with_flag, "TORUS_GHW_MAX_N", "4");
    assert!(out.status.success(), "flag should override the environment");

    let out = run_env(&args, "TORUS_GHW_MAX_N", "not-a-number");
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "parse");
}

#[test]
fn formula_method_requires_a_known_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    std::fs::write(&path, "3 2\n1 0\n1 1\n1 2\n").unwrap();
    let out = run(&[
        "hierarchy",
        "--points",
        path.to_str().unwrap(),
        "--d",
        "1",
        "--method",
        "formula",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "formula_unavailable");
}

#[test]
fn toric_file_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.exp");
    std::fs::write(&path, "7\n1 x 2\n").unwrap();
    let out = run(&["hierarchy", "--toric", path.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "parse");

    let out = run(&["hierarchy", "--toric", "/nonexistent/file.exp", "--d", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_error(&out);
    assert_eq!(err["kind"], "io");
}

#[test]
fn bipartite_point_set_flag() {
    let out = run(&["hierarchy", "--bipartite", "5", "2", "2", "--d", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["point_set"]["kind"], "bipartite");
    assert_eq!(v["point_set"]["m"], 2);
    assert_eq!(v["n"], 16);
    let d2 = v["weights"][1]["value"].as_u64().unwrap();
    assert_eq!(d2, 12);
}
