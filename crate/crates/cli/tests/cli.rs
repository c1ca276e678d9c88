//! End-to-end tests of the `latball` binary: exit codes, output formats,
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.display().to_string()
}

fn latball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latball"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn count_cubic_lattice_radius_two() {
    let out = latball(&["count", "--matrix", &fixture("identity3.txt"), "--radius", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["interior"], 27);
    assert_eq!(v["boundary"], 6);
    assert_eq!(v["weighted_total"].as_f64().unwrap(), 30.0);
    assert!((v["main_term"].as_f64().unwrap() - 32.0 * std::f64::consts::PI / 3.0).abs() < 1e-9);
}

#[test]
fn count_segment() {
    let out = latball(&["count", "--matrix", &fixture("identity1.txt"), "--radius", "2.5"]);
    let v = stdout_json(&out);
    assert_eq!(v["weighted_total"].as_f64().unwrap(), 5.0);
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-9);
}

#[test]
fn count_csv_layout() {
    let out = latball(&[
        "count",
        "--matrix",
        &fixture("identity2.txt"),
        "--radius",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "interior,boundary,weighted_total,scaled_total,main_term,discrepancy"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("1,4,3.0000000000000000e0,"), "{row}");
}

#[test]
fn matrix_json_forms() {
    let text = latball(&["count", "--matrix", &fixture("identity2.txt"), "--radius", "1.5"]);
    let json = latball(&["count", "--matrix", &fixture("identity2.json"), "--radius", "1.5"]);
    assert_eq!(text.stdout, json.stdout);
    assert_eq!(stdout_json(&text)["weighted_total"].as_f64().unwrap(), 9.0);

    let diag = latball(&["count", "--matrix", &fixture("diag34.json"), "--radius", "3.5"]);
    // diag(3,4): points (0,0), (±1,0) inside radius 3.5
    assert_eq!(stdout_json(&diag)["weighted_total"].as_f64().unwrap(), 3.0);
}

#[test]
fn rank_deficient_matrix_exits_3() {
    let out = latball(&["count", "--matrix", &fixture("rank_deficient.txt"), "--radius", "1"]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("rank deficient"), "{err}");
    assert!(err.contains("rank_deficient.txt"), "{err}");
}

#[test]
fn bad_inputs_exit_2() {
    let missing = latball(&["count", "--matrix", "/nonexistent/m.txt", "--radius", "1"]);
    assert_eq!(code(&missing), 2);

    let malformed = latball(&["count", "--matrix", &fixture("malformed.txt"), "--radius", "1"]);
    assert_eq!(code(&malformed), 2);
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("line 1"));

    let bad_center = latball(&[
        "count",
        "--matrix",
        &fixture("identity2.txt"),
        "--radius",
        "1",
        "--center",
        "0.5",
    ]);
    assert_eq!(code(&bad_center), 2);
    assert!(String::from_utf8_lossy(&bad_center.stderr).contains("--center"));

    let negative_radius =
        latball(&["count", "--matrix", &fixture("identity2.txt"), "--radius", "-1"]);
    assert_eq!(code(&negative_radius), 2);
}

#[test]
fn bound_values() {
    let v = stdout_json(&latball(&["bound", "--dim", "3", "--delta", "1", "--radius", "1"]));
    assert!((v["bound"].as_f64().unwrap() - 4.0 * std::f64::consts::PI).abs() < 1e-9);

    let v = stdout_json(&latball(&["bound", "--dim", "1", "--delta", "0.5", "--radius", "10"]));
    assert!((v["bound"].as_f64().unwrap() - 4.0).abs() < 1e-12);

    // N = 3, delta = 1/2, R = 1: u = 2/(1 - 4/pi^2), bound = 4*pi*u
    let v = stdout_json(&latball(&["bound", "--dim", "3", "--delta", "0.5", "--radius", "1"]));
    let pi = std::f64::consts::PI;
    let expect = 4.0 * pi * 2.0 / (1.0 - 4.0 / (pi * pi));
    assert!((v["bound"].as_f64().unwrap() - expect).abs() < 1e-6);

    let bad = latball(&["bound", "--dim", "0", "--delta", "1", "--radius", "1"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn bound_denominator_failure_exits_4() {
    // deep underflow regime: the computed denominator collapses to zero,
    // which the evaluator reports rather than returning a bogus bound
    let out = latball(&["bound", "--dim", "3", "--delta", "1e-9", "--radius", "1e-9"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not positive"));
}

#[test]
fn verify_hypothesis_violation_exits_5() {
    let out = latball(&[
        "verify",
        "--matrix",
        &fixture("identity2.txt"),
        "--delta",
        "2",
        "--radius",
        "1",
    ]);
    assert_eq!(code(&out), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
}

#[test]
fn verify_rejects_malformed_center() {
    let out = latball(&[
        "verify",
        "--matrix",
        &fixture("identity3.txt"),
        "--delta",
        "1",
        "--radius",
        "2",
        "--center",
        "0.25,0.5,zebra",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("zebra"));
}

#[test]
fn verify_passing_trial() {
    let out = latball(&[
        "verify",
        "--matrix",
        &fixture("identity3.txt"),
        "--delta",
        "1",
        "--radius",
        "2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["margin"].as_f64().unwrap() > 0.0);
    assert_eq!(v["basis"]["cols"], 3);
}

#[test]
fn sweep_deterministic_and_clean() {
    let args = ["sweep", "--trials", "60", "--seed", "11", "--format", "csv"];
    let first = latball(&args);
    let second = latball(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "CSV output must be byte-identical");

    let text = String::from_utf8(first.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "seed,trial,m,n,op_norm,delta,r,center_1,center_2,center_3,center_4,\
         lhs,rhs,margin,boundary_hits,passed"
    );
    // every data row reports a pass
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",1"), "failed row: {line}");
    }
    let summary = String::from_utf8(first.stderr).unwrap();
    assert!(summary.contains("failures: 0"), "{summary}");
}

#[test]
fn sweep_structured_reports_trials() {
    let out = latball(&["sweep", "--trials", "5", "--seed", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["trials"].as_array().unwrap().len(), 5);
    assert_eq!(v["seed"], 3);
}

#[test]
fn poisson_check_classical() {
    let out = latball(&[
        "poisson-check",
        "--matrix",
        &fixture("identity1.txt"),
        "--delta",
        "1",
        "--center",
        "0.3",
        "--trunc-radius",
        "1000",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["freq_terms"], 1);
    assert!((v["rhs"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["abs_error"].as_f64().unwrap() <= v["truncation_bound"].as_f64().unwrap());
}

#[test]
fn poisson_check_support_violation_exits_2() {
    let out = latball(&[
        "poisson-check",
        "--matrix",
        &fixture("identity2.txt"),
        "--delta",
        "1",
        "--bandwidth",
        "0.9",
        "--trunc-radius",
        "50",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not supported"));
}
