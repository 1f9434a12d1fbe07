//! End-to-end checks of the installed binary: output bytes, exit codes,
//! and determinism across reruns.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e2spec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn spectrum_json_two_state() {
    let o = run(&[
        "spectrum", "--parity", "even", "--ntilde", "2", "--zeta", "0.5", "--lambda", "0.1",
        "--format", "json",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "[{\"re\":0.354670691,\"im\":0.0},{\"re\":3.69532931,\"im\":0.0}]\n"
    );
}

#[test]
fn disc_prints_exact_reduced_discriminant() {
    let o = run(&["disc", "--parity", "even", "--ntilde", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "zhat^2 - 1\nkappa = -16\n");
}

#[test]
fn loop_csv_reports_transposition() {
    let path = std::env::temp_dir().join(format!("e2spec-loop-{}.csv", std::process::id()));
    let o = run(&[
        "loop", "--parity", "even", "--ntilde", "2", "--zeta", "0.5", "--center", "1+0i",
        "--radius", "0.5", "--steps", "64", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "cycles: (1 2)\n");
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(csv.starts_with("phi,k,re,im\n"));
    assert!(csv.contains("\n0.5,1,3.31432242,-0.814564909\n"));
    assert!(csv.ends_with("cycles: (1 2)\n"));
}

#[test]
fn reruns_are_byte_identical() {
    let args = [
        "spectrum", "--parity", "odd", "--ntilde", "3", "--zeta", "0.7", "--sweep", "0:4:41",
        "--format", "csv",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lambda_minus_one_is_rejected() {
    let o = run(&[
        "spectrum", "--parity", "even", "--ntilde", "2", "--zeta", "0.5", "--lambda", "-1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("lambda = -1 is excluded"));
}

#[test]
fn unknown_flag_exits_two() {
    let o = run(&["spectrum", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn moments_at_coalescence_exit_three() {
    // zhat = 1 puts the two-state block exactly at its exceptional point
    let o = run(&[
        "moments", "--parity", "even", "--ntilde", "2", "--zeta", "0.5", "--lambda", "1",
        "--max-order", "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("degenerate"));
}

#[test]
fn norms_json_carries_exact_rationals() {
    let o = run(&[
        "norms", "--parity", "even", "--ntilde", "2", "--zeta", "0.5", "--lambda", "0.1",
        "--format", "json",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"exact\":\"-121/100\""));
}

#[test]
fn mathieu_limit_reports_sqrt_two_at_level_two() {
    let o = run(&["mathieu-limit", "--parity", "even", "--levels", "6", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("level,g\n2,1.41421356\n"));
    assert!(out.contains("\n6,1.46876861\n"));
}
