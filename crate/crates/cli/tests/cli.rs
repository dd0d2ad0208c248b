//! Runs the binary end to end.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-harmonic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn energy_of_e1_in_case4() {
    let out = run(&[
        "energy",
        "--case",
        "4",
        "--params",
        "A=5, B=3, eps=1",
        "--vector",
        "1,0,0,0",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["energy_density"], "29/2");
    assert_eq!(v["mode"], "exact");
}

#[test]
fn null_field_is_parallel_in_case14() {
    let out = run(&["classify", "--case", "14", "--vector", "0,0,1,-1"]);
    assert!(out.status.success());
    let v = json(&out);
    let report = &v["report"];
    assert_eq!(report["parallel"]["holds"], true);
    assert_eq!(report["parallel"]["residual"], 0.0);
    assert_eq!(report["consistency_failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_is_deterministic_and_fails_on_refuted_claims() {
    let a = run(&["verify", "--seed", "42"]);
    let b = run(&["verify", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v["summary"]["refuted_asserted"].as_u64().unwrap() > 0);
}

#[test]
fn verify_case15_passes() {
    let out = run(&["verify", "--case", "15"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["refuted"], 0);
}

#[test]
fn usage_and_input_errors_exit_with_2() {
    assert_eq!(
        run(&["energy", "--case", "17", "--vector", "1,0,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["energy", "--case", "4", "--vector", "1,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let out = run(&[
        "energy",
        "--case",
        "4",
        "--params",
        "A=1, B=5, eps=1",
        "--vector",
        "1,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2), "A^2 < B^2 is inadmissible");
    assert!(!out.stderr.is_empty());
}

#[test]
fn catalog_dump_lists_sixteen_cases() {
    let out = run(&["catalog", "dump"]);
    assert!(out.status.success());
    let v = json(&out);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 16);
}

#[test]
fn algebra_file_input() {
    // Case (4) at A=5, B=3: [e1,e2] = 4e1 + 3e2, [e3,e4] = 5e3.
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{ "dim": 4,
            "metric": [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,1]],
            "brackets": [{{ "i": 1, "j": 2, "coeffs": [4, 3, 0, 0] }},
                         {{ "i": 3, "j": 4, "coeffs": [0, 0, 5, 0] }}] }}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let out = run(&["energy", "--algebra", path, "--vector", "1,0,0,0"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["energy_density"], "29/2");

    let lap = run(&["laplacian", "--algebra", path, "--vector", "1,2,-3,4"]);
    assert!(lap.status.success());
    let v = json(&lap);
    assert_eq!(
        v["laplacian"],
        serde_json::json!(["-25", "-50", "75", "-100"])
    );
    assert_eq!(v["collinearity"]["lambda"], "-25");
}

#[test]
fn malformed_algebra_file_is_rejected() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{ "dim": 4, "metric": [[1,0],[0,1]] }}"#).unwrap();
    let out = run(&[
        "energy",
        "--algebra",
        file.path().to_str().unwrap(),
        "--vector",
        "1,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output_parses() {
    let out = run(&[
        "--format", "csv", "scan", "--case", "6", "--grid", "-1:1:1", "--points",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["a", "b", "c", "d", "kind", "lambda"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(rows
        .iter()
        .any(|r| &r[0] == "0" && &r[1] == "1" && &r[2] == "-1" && &r[5] == "-13"));
}

#[test]
fn float_mode_reports_float() {
    let out = run(&[
        "--mode", "float", "energy", "--case", "4", "--vector", "1,0,0,0",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["mode"], "float");
    let e: f64 = match &v["energy_density"] {
        Value::String(s) => s.parse().unwrap(),
        other => other.as_f64().unwrap(),
    };
    assert!((e - 14.5).abs() < 1e-12);
}
