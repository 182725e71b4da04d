use std::process::{Command, Output};

use serde_json::Value;

fn adsgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adsgeom"))
        .args(args)
        .env_remove("ADS_TOL")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON error record")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("adsgeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn circle_sigma_scan_reports_degenerate_family() {
    let out = adsgeom(&["scan", "--preset", "ads3-circle", "--invariant", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["degenerate"], Value::Bool(true));
    assert_eq!(v["notes"][0], "σ± identically 0 (degenerate family)");
    assert!(String::from_utf8_lossy(&out.stderr).contains("σ± identically 0 (degenerate family)"));
}

#[test]
fn helix_sheet_obj_has_one_vertex_per_sample() {
    let path = tmp("helix.obj");
    let out = adsgeom(&[
        "sheet",
        "--preset",
        "ads4-helix",
        "--grid",
        "s=0:6.28:20,theta=0:6.28:10,mu=-2:2:5",
        "--format",
        "obj",
        "--project",
        "1,2,3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines().filter(|l| l.starts_with("v ")).count(),
        20 * 10 * 5
    );
    // Faces span the first two axes of every μ slice.
    assert_eq!(
        text.lines().filter(|l| l.starts_with("f ")).count(),
        19 * 9 * 5
    );
    assert_eq!(
        text.lines().filter(|l| l.starts_with("#a ")).count(),
        20 * 10 * 5
    );
}

#[test]
fn sheet_csv_is_deterministic() {
    let args = [
        "sheet",
        "--preset",
        "ads3-helix",
        "--grid",
        "s=0:1:4,mu=-1:1:3",
        "--format",
        "csv",
    ];
    let a = adsgeom(&args);
    let b = adsgeom(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "s,sign,mu,x-1,x0,x1,x2,regular"
    );
    assert_eq!(text.lines().count(), 1 + 4 * 2 * 3);
}

#[test]
fn malformed_json_is_a_usage_error_with_position() {
    let path = tmp("bad.json");
    std::fs::write(&path, "{\n  \"dim\": 5,\n  \"domain\": [0, 1\n").unwrap();
    let out = adsgeom(&["frame", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "UsageError");
    let msg = err["message"].as_str().unwrap();
    assert!(msg.contains("line 4"), "{msg}");
    assert!(msg.contains("column"), "{msg}");
}

#[test]
fn domain_errors_exit_one_with_structured_record() {
    let out = adsgeom(&["frame", "--preset", "ads4-helix", "--at", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "DomainError");

    let out = adsgeom(&[
        "classify",
        "--preset",
        "ads4-lightcone-sphere",
        "--at",
        "0.1,0.2",
        "--branch",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["label"], "Degenerate");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(adsgeom(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(adsgeom(&["frame"]).status.code(), Some(2));
    assert_eq!(
        adsgeom(&["frame", "--preset", "nope"]).status.code(),
        Some(2)
    );
    let out = adsgeom(&["sheet", "--preset", "ads4-helix", "--grid", "s=0:1:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "UsageError");
    let out = adsgeom(&[
        "sheet",
        "--preset",
        "ads3-helix",
        "--format",
        "obj",
        "--project",
        "0,1,3",
        "--grid",
        "s=0:1:3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_overrides_from_env_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_adsgeom"))
        .args(["validate", "--preset", "ads3-circle"])
        .env("ADS_TOL", "zero=oops")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = adsgeom(&[
        "validate",
        "--preset",
        "ads3-circle",
        "--tol",
        "algebraic=1e-8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["ok"], Value::Bool(true));
}

#[test]
fn input_file_round_trips_a_curve() {
    // The unit-speed circle of radius 1: (√2, 0, cos s, sin s).
    let path = tmp("circle.json");
    let json = r#"{
        "dim": 4,
        "domain": [0, 6.283185307179586],
        "coords": [
            [{"kind": "poly", "coeff": 1.4142135623730951, "power": 0}],
            [{"kind": "poly", "coeff": 0, "power": 0}],
            [{"kind": "cos", "coeff": 1, "freq": 1}],
            [{"kind": "sin", "coeff": 1, "freq": 1}]
        ]
    }"#;
    std::fs::write(&path, json).unwrap();
    let out = adsgeom(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["ok"], Value::Bool(true));
}

#[test]
fn classify_and_invariants_report_json() {
    let out = adsgeom(&[
        "classify",
        "--preset",
        "ads4-case1-curve",
        "--at",
        "1.2",
        "--theta",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["label"], "A2_CuspidalEdge");
    assert_eq!(v["ak_order"], 2);

    let out = adsgeom(&[
        "invariants",
        "--preset",
        "ads4-case1-curve",
        "--theta",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["case_tag"], "Case1");
}

#[test]
fn models_sample_sigma_pu() {
    let out = adsgeom(&[
        "models",
        "--set",
        "Sigma(PU)",
        "--grid",
        "u1=-0.6:0.6:3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let coords = &v[2]["coords"];
    assert!((coords[0].as_f64().unwrap() - 5.0 * 0.216 / 108.0).abs() < 1e-15);
    assert!((coords[1].as_f64().unwrap() - 0.09).abs() < 1e-15);
    assert!((coords[3].as_f64().unwrap() - 0.6).abs() < 1e-15);
}

#[test]
fn verify_single_suite() {
    let out = adsgeom(&["verify", "--suite", "1", "--suite", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]  1 algebra"));
    assert!(text.contains("2/2 suites passed"));
    assert_eq!(adsgeom(&["verify", "--suite", "11"]).status.code(), Some(2));
}
