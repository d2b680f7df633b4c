//! End-to-end runs of the `obstructo` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obstructo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_sphere_json() {
    let o = run(&["verify", "sphere", "--spin", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scenario"], "sphere");
    assert_eq!(v["verdict"], "OBSTRUCTED");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "params", "scenario", "verdict"]);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["residual"].is_string() || c["residual"].is_number());
        assert!(["PAPER", "DERIVED", "TRIVIAL"].contains(&c["source"].as_str().unwrap()));
    }
}

#[test]
fn verify_output_is_stable() {
    let a = stdout(&run(&["verify", "groenewold", "--format", "json"]));
    let b = stdout(&run(&["verify", "groenewold", "--format", "json"]));
    assert_eq!(a, b);
    assert!(a.contains("\"-(1/3)*hbar^2*I\""), "{a}");
}

#[test]
fn several_spins_give_an_array() {
    let o = run(&[
        "verify", "sphere", "--spin", "1/2,3/2", "--mode", "matrix", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn config_file_and_flags() {
    let dir = std::env::temp_dir().join(format!("obstructo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(
        &path,
        r#"{"scenarios": ["rplus", "cylinder"], "rplus_degree": 4}"#,
    )
    .unwrap();
    let o = run(&[
        "verify",
        "all",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["scenario"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["rplus", "cylinder"]);
    assert_eq!(v[0]["params"]["degree"], 4);

    std::fs::write(&path, r#"{"grid": 10}"#).unwrap();
    let o = run(&["verify", "torus", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&path, r#"{"colour": 1}"#).unwrap();
    assert_eq!(
        run(&["verify", "rplus", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failed_check_exits_one() {
    // 0.3 is inexact in binary, so roundoff exceeds a 1e-300 tolerance
    let o = run(&[
        "verify",
        "sphere",
        "--spin",
        "2",
        "--mode",
        "matrix",
        "--tolerance",
        "1e-300",
        "--hbar",
        "0.3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("_matrix failed"));
    assert!(stdout(&o).contains("verdict: OBSTRUCTED"));
}

#[test]
fn bracket_and_normalizer() {
    let o = run(&["bracket", "--space", "s2", "S1", "S2"]);
    assert_eq!(stdout(&o), "-S3\n");
    let o = run(&["normalizer", "--space", "r2n", "--n", "1", "--degree", "4"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&["reduce", "--space", "tstar_s1", "sin_theta^3"]);
    assert_eq!(stdout(&o), "sin_theta - cos_theta^2*sin_theta\n");
}

#[test]
fn usage_errors() {
    let o = run(&["reduce", "--space", "s2", "S1 +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 4"));
    let o = run(&["reduce", "--space", "s2", "q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown symbol `q`"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "sphere", "--spin", "1/3"]).status.code(),
        Some(2)
    );
}

#[test]
fn rep_json_schema() {
    let o = run(&[
        "rep",
        "schrodinger",
        "--truncation",
        "5",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let q = &v["generators"]["Q"];
    assert_eq!(q["dim"], 5);
    assert_eq!(q["rows"].as_array().unwrap().len(), 5);
    assert_eq!(q["rows"][0][1], serde_json::json!([1.0, 0.0]));
}

#[test]
fn preq_check_presets() {
    for preset in ["vanhove", "position", "cylinder", "affine", "affine-"] {
        let o = run(&["preq-check", preset, "--degree", "3"]);
        assert_eq!(o.status.code(), Some(0), "{preset}");
        assert!(stdout(&o).contains("CONSISTENT"));
    }
    assert_eq!(
        run(&["preq-check", "torus", "--space", "s2"]).status.code(),
        Some(2)
    );
}
