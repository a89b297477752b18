//! End-to-end tests of the `qpluri` binary: golden outputs, exit codes,
//! and report determinism, driving the executable exactly as a user would.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use qpluri_cli::json::{FormDoc, NormalizeDoc, PolynomialDoc, SuiteReport};
use qpluri_cli::rng::{self, SplitMix64};
use qpluri_core::exterior::hh_to_2form;
use qpluri_core::fields::norm_sq;
use qpluri_core::{QMatrix, Quaternion};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qpluri"))
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Writes test input under the system temp directory; names must be
/// unique per test since the harness runs tests concurrently.
fn temp_input(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qpluri-cli-{name}"));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

fn field_json(p: &qpluri_core::Polynomial) -> String {
    serde_json::to_string(&PolynomialDoc::from_core(p)).expect("serializes")
}

#[test]
fn det_of_identity_prints_one() {
    let input = r#"{"rows":2,"cols":2,"data":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[1,0,0,0]]}"#;
    let out = run_stdin(&["det"], input);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "1.00000000000000e0");
}

#[test]
fn det_matches_the_eigenvalue_oracle() {
    // [[2, i+j], [−i−j, 2]] has eigenvalues 2 ± √2, so the determinant is 2
    let input = r#"{"rows":2,"cols":2,"data":[[2,0,0,0],[0,1,1,0],[0,-1,-1,0],[2,0,0,0]]}"#;
    let out = run_stdin(&["det"], input);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "2.00000000000000e0");
}

#[test]
fn det_reads_from_a_file_and_writes_to_a_file() {
    let json = temp_input(
        "det-in.json",
        r#"{"rows":1,"cols":1,"data":[[3,0,0,0]]}"#,
    );
    let target = std::env::temp_dir().join("qpluri-cli-det-out.txt");
    let out = run(&[
        "det",
        "--json",
        json.to_str().expect("utf-8 path"),
        "--out",
        target.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "");
    let written = std::fs::read_to_string(&target).expect("output file exists");
    assert_eq!(written, "3.00000000000000e0\n");
}

#[test]
fn det_rejects_malformed_json_with_exit_2() {
    let out = run_stdin(&["det"], "{not json");
    assert_eq!(code_of(&out), 2);
    assert!(!out.stderr.is_empty(), "diagnostic goes to standard error");
}

#[test]
fn det_rejects_a_missing_input_file_with_exit_2() {
    let out = run(&["det", "--json", "/nonexistent/input.json"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn det_rejects_non_hyperhermitian_input_with_exit_3() {
    let input = r#"{"rows":1,"cols":1,"data":[[0,1,0,0]]}"#;
    let out = run_stdin(&["det"], input);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn normalize_scaled_beta_has_unit_spectrum() {
    // 2β₂ corresponds to the identity matrix, so ν = (1, 1)
    let input = r#"{"n":2,"grade":2,"terms":[
        {"idx":[0,2],"re":2,"im":0},
        {"idx":[1,3],"re":2,"im":0}]}"#;
    let out = run_stdin(&["normalize"], input);
    assert_eq!(code_of(&out), 0);
    let report: NormalizeDoc = serde_json::from_str(&stdout_of(&out)).expect("report parses");
    assert_eq!(report.nu, vec![1.0, 1.0]);
    assert!(report.residual <= 1e-12);
}

#[test]
fn normalize_recovers_a_diagonal_spectrum() {
    let diag = QMatrix::from_vec(
        2,
        2,
        vec![
            Quaternion::real(3.0),
            Quaternion::ZERO,
            Quaternion::ZERO,
            Quaternion::real(-1.0),
        ],
    )
    .expect("2x2 data");
    let form = hh_to_2form(&diag, 1e-9).expect("hyperhermitian");
    let input = serde_json::to_string(&FormDoc::from_core(&form)).expect("serializes");
    let out = run_stdin(&["normalize"], &input);
    assert_eq!(code_of(&out), 0);
    let report: NormalizeDoc = serde_json::from_str(&stdout_of(&out)).expect("report parses");
    assert_eq!(report.nu, vec![3.0, -1.0]);
}

#[test]
fn normalize_rejects_an_imaginary_form_with_exit_3() {
    let input = r#"{"n":1,"grade":2,"terms":[{"idx":[0,1],"re":0,"im":1}]}"#;
    let out = run_stdin(&["normalize"], input);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn normalize_exits_1_when_the_residual_exceeds_the_tolerance() {
    let form = rng::real_two_form(&mut SplitMix64::new(42), 3);
    let input = serde_json::to_string(&FormDoc::from_core(&form)).expect("serializes");
    let ok = run_stdin(&["normalize"], &input);
    assert_eq!(code_of(&ok), 0, "default tolerance accepts the normal form");
    let strict = run_stdin(&["normalize", "--tol", "1e-30"], &input);
    assert_eq!(code_of(&strict), 1, "an unreachable tolerance fails the check");
    // the report is still emitted for inspection
    let report: NormalizeDoc =
        serde_json::from_str(&stdout_of(&strict)).expect("report parses");
    assert!(report.residual > 1e-30);
}

#[test]
fn ma_of_the_squared_norm_is_eight_to_the_n() {
    let one = temp_input("ma-normsq-1.json", &field_json(&norm_sq(1)));
    let out = run(&["ma", one.to_str().expect("utf-8 path"), "--point", "[0.3,-1.0,0.5,2.0]"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "8.00000000000000e0");

    let two = temp_input("ma-normsq-2.json", &field_json(&norm_sq(2)));
    let path = two.to_str().expect("utf-8 path");
    let out = run(&["ma", path, path, "--point", "[0,0,0,0,0,0,0,0]"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "6.40000000000000e1");
}

#[test]
fn ma_of_a_linear_field_vanishes() {
    let linear = temp_input(
        "ma-linear.json",
        r#"{"vars":4,"terms":[{"exp":[1,0,0,0],"re":1,"im":0}]}"#,
    );
    let out = run(&["ma", linear.to_str().expect("utf-8 path"), "--point", "[1,2,3,4]"]);
    assert_eq!(code_of(&out), 0);
    let value: f64 = stdout_of(&out).trim().parse().expect("a number");
    assert_eq!(value, 0.0);
}

#[test]
fn ma_polarizes_separable_quadratics() {
    // Hessians diag(2,0) and diag(0,2) polarize to a mixed value of 2
    let u1 = temp_input(
        "ma-sep-1.json",
        r#"{"vars":8,"terms":[{"exp":[2,0,0,0,0,0,0,0],"re":1,"im":0}]}"#,
    );
    let u2 = temp_input(
        "ma-sep-2.json",
        r#"{"vars":8,"terms":[{"exp":[0,0,0,0,2,0,0,0],"re":1,"im":0}]}"#,
    );
    let out = run(&[
        "ma",
        u1.to_str().expect("utf-8 path"),
        u2.to_str().expect("utf-8 path"),
        "--point",
        "[0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8]",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "2.00000000000000e0");
}

#[test]
fn ma_accepts_expression_fields() {
    let expr = temp_input("ma-expr.json", r#"{"mul":[{"coord":0},{"coord":0}]}"#);
    let out = run(&["ma", expr.to_str().expect("utf-8 path"), "--point", "[0.7,0,0,0]"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "2.00000000000000e0");
}

#[test]
fn ma_rejects_a_dimension_mismatch_with_exit_3() {
    // one field fixes ℍ¹, but this polynomial lives on ℝ⁸
    let wide = temp_input("ma-wide.json", &field_json(&norm_sq(2)));
    let out = run(&["ma", wide.to_str().expect("utf-8 path"), "--point", "[0,0,0,0]"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn verify_rejects_an_unknown_suite_with_exit_4() {
    let out = run(&["verify", "bogus"]);
    assert_eq!(code_of(&out), 4);
    let err = String::from_utf8(out.stderr).expect("utf-8 diagnostics");
    assert!(err.contains("unknown suite"), "stderr names the problem: {err}");
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let args = ["verify", "moore", "--seed", "9", "--cases", "5"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_writes_a_parsable_report() {
    let target = std::env::temp_dir().join("qpluri-cli-verify-report.json");
    let out = run(&[
        "verify",
        "tau",
        "--cases",
        "3",
        "--out",
        target.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "");
    let text = std::fs::read_to_string(&target).expect("report file exists");
    let report: SuiteReport = serde_json::from_str(&text).expect("report parses");
    assert_eq!(report.suite, "tau");
    assert!(report.pass);
    assert!(report.cases > 0);
}

#[test]
fn help_and_usage_errors_have_distinct_exits() {
    assert_eq!(code_of(&run(&["--help"])), 0);
    assert_eq!(code_of(&run(&["--version"])), 0);
    assert_eq!(code_of(&run(&["det", "--bogus"])), 4);
    assert_eq!(code_of(&run(&[])), 4, "a bare invocation is a usage error");
}
