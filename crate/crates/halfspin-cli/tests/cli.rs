//! Process-level tests of the `halfspin` binary: flag surface, report
//! schema, exit codes, and byte determinism.

use std::process::{Command, Output};

fn halfspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfspin"))
        .args(args)
        .env_remove("HALFSPIN_WORKERS")
        .output()
        .expect("the binary runs")
}

fn stdout_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8(output.stdout.clone())
        .expect("utf-8 output")
        .lines()
        .map(|line| serde_json::from_str(line).expect("every line is a JSON object"))
        .collect()
}

#[test]
fn main_identity_campaign_passes_with_schema_rows() {
    let output = halfspin(&[
        "verify",
        "--check",
        "main-identity",
        "--g",
        "2..3",
        "--n",
        "2..4",
    ]);
    assert!(output.status.success(), "exit 0 expected");
    let first_line = String::from_utf8(output.stdout.clone())
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert_eq!(
        first_line,
        r#"{"check":"main-identity","g":2,"n":2,"t":null,"a":[0,3],"status":"pass","lhs":null,"rhs":null,"value":"0","millis":0}"#,
        "the emitted columns keep the schema order"
    );
    let rows = stdout_lines(&output);
    assert!(!rows.is_empty());
    for row in &rows {
        assert_eq!(row["check"], "main-identity");
        assert_eq!(row["status"], "pass");
        assert_eq!(row["value"], "0");
        assert_eq!(row["millis"], 0);
    }
}

#[test]
fn runs_are_byte_identical_across_worker_counts() {
    let one = halfspin(&["verify", "--g", "2", "--n", "1..3", "--workers", "1"]);
    let two = halfspin(&["verify", "--g", "2", "--n", "1..3", "--workers", "2"]);
    assert!(one.status.success());
    assert!(two.status.success());
    assert_eq!(one.stdout, two.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_halfspin"))
        .args(["verify", "--g", "2", "--n", "1..3"])
        .env("HALFSPIN_WORKERS", "2")
        .output()
        .expect("the binary runs");
    assert!(via_env.status.success());
    assert_eq!(one.stdout, via_env.stdout);
}

#[test]
fn seeds_change_the_sample_stream_but_not_the_verdict() {
    let args = [
        "verify",
        "--check",
        "hyperplane-vanishing",
        "--g",
        "2",
        "--n",
        "2",
    ];
    let default_seed = halfspin(&args);
    let other_seed = halfspin(&[&args[..], &["--seed", "7"]].concat());
    assert!(default_seed.status.success());
    assert!(other_seed.status.success());
    assert_eq!(
        stdout_lines(&default_seed).len(),
        stdout_lines(&other_seed).len()
    );
    assert_ne!(
        default_seed.stdout, other_seed.stdout,
        "different seeds must sample different points"
    );
}

#[test]
fn eval_handles_the_documented_examples() {
    let zero = halfspin(&["eval", "P", "--g", "2", "--a", "1,2"]);
    assert!(zero.status.success());
    assert_eq!(stdout_lines(&zero)[0]["value"], "0");

    let minus_twenty = halfspin(&["eval", "p", "--g", "2", "--a", "2"]);
    assert!(minus_twenty.status.success());
    let row = &stdout_lines(&minus_twenty)[0];
    assert_eq!(row["check"], "p");
    assert_eq!(row["value"], "-20");
    assert_eq!(row["a"], serde_json::json!([2]));
}

#[test]
fn eval_accepts_rational_abscissas() {
    let output = halfspin(&["eval", "tilde-s", "--g", "2", "--a", "1,2", "--x", "-3/2"]);
    assert!(output.status.success());
    let row = &stdout_lines(&output)[0];
    assert_eq!(row["value"], "-60");
    assert_eq!(row["t"], serde_json::Value::Null);
}

#[test]
fn failing_rows_carry_both_sides_and_exit_one() {
    let output = halfspin(&["verify", "--check", "r-agreement", "--g", "2", "--a", "3"]);
    assert_eq!(output.status.code(), Some(1));
    let rows = stdout_lines(&output);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["status"], "fail");
    assert_eq!(rows[0]["lhs"], "-70");
    assert_eq!(rows[0]["rhs"], "-42");
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--g", "1..3"],
        &["verify", "--n", "9"],
        &["verify", "--check", "no-such-check"],
        &[
            "verify",
            "--check",
            "hyperplane-vanishing",
            "--g",
            "2",
            "--a",
            "1,2",
        ],
        &[
            "verify",
            "--check",
            "s-polynomial",
            "--g",
            "2",
            "--a",
            "2,2",
        ],
        &["verify", "--a", "1,2", "--g", "2..3"],
        &["eval", "s", "--g", "2", "--a", "1,2"],
        &["eval", "p-nt", "--g", "2", "--a", "1,2"],
        &["eval", "p", "--g", "2", "--a", "1,2", "--x", "1/0"],
        &["scan", "frobnicate", "--g", "2"],
    ];
    for case in cases {
        let output = halfspin(case);
        assert_eq!(output.status.code(), Some(2), "case {case:?}");
        assert!(!output.stderr.is_empty(), "case {case:?} explains itself");
    }

    let bad_env = Command::new(env!("CARGO_BIN_EXE_halfspin"))
        .args(["verify", "--g", "2", "--n", "1"])
        .env("HALFSPIN_WORKERS", "many")
        .output()
        .expect("the binary runs");
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn csv_output_flattens_the_same_rows() {
    let output = halfspin(&[
        "verify",
        "--check",
        "conjecture",
        "--g",
        "2",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check,g,n,t,a,status,lhs,rhs,value,millis")
    );
    assert_eq!(lines.next(), Some("conjecture,2,2,0,0-3,pass,,,0,0"));
    // 4 simplex points, slices t = 0..2 each.
    assert_eq!(text.lines().count(), 1 + 4 * 3);
}

#[test]
fn scan_tabulates_every_simplex_point() {
    let output = halfspin(&["scan", "p", "--g", "2", "--n", "2"]);
    assert!(output.status.success());
    let rows = stdout_lines(&output);
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|row| row["value"] == "0"));

    let integral = halfspin(&["scan", "integral", "--g", "2", "--n", "1..2"]);
    let rows = stdout_lines(&integral);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["value"], "1/2880");
    assert_eq!(rows[1]["value"], "1/960");
}

#[test]
fn bench_times_points_and_summarizes_on_stderr() {
    let output = halfspin(&["bench", "--g", "2", "--n", "1..2"]);
    assert!(output.status.success());
    let rows = stdout_lines(&output);
    // One n = 1 point plus the four compositions of 3 into two entries.
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|row| row["check"] == "bench"));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("bench: 5 points"), "got: {stderr}");
}
