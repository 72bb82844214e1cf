//! Runs the `ehrhart` binary and compares stdout byte-for-byte with the files
//! under `tests/golden/`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Runs the binary from the golden directory so input paths stay relative.
fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ehrhart"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
        out.status.code().expect("exit code"),
    )
}

fn golden(name: &str, args: &[&str], exit: i32) {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, exit, "{args:?}\nstdout:\n{stdout}\nstderr:\n{stderr}");
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout, expected, "{args:?} differs from {name}");
}

#[test]
fn delta_of_volume_two_tetrahedron() {
    golden(
        "delta_section2_d3.txt",
        &["delta", "inputs/section2_d3.json", "--method", "both"],
        0,
    );
}

#[test]
fn delta_of_unit_tetrahedron() {
    golden("delta_unit_d3.txt", &["delta", "inputs/unit_d3.json"], 0);
}

#[test]
fn delta_of_reeve_tetrahedron_by_counting() {
    golden(
        "delta_reeve_r3.txt",
        &["delta", "inputs/reeve_r3.json", "--method", "counts"],
        0,
    );
}

#[test]
fn delta_rejects_collinear_vertices() {
    golden(
        "delta_collinear.txt",
        &["delta", "inputs/collinear.json"],
        1,
    );
}

#[test]
fn delta_reports_missing_file() {
    let (stdout, _, code) = run(&["delta", "inputs/no_such_file.json"]);
    assert_eq!(code, 1);
    assert!(stdout.starts_with("status: invalid-input\n"));
}

#[test]
fn delta_budget_exceeded() {
    golden(
        "delta_budget.txt",
        &[
            "--budget",
            "10",
            "delta",
            "inputs/reeve_r3.json",
            "--method",
            "counts",
        ],
        4,
    );
}

#[test]
fn check_passing_but_out_of_scope() {
    golden(
        "check_out_of_scope.txt",
        &["check", "1", "0", "1", "0", "1", "1", "0", "0"],
        3,
    );
}

#[test]
fn check_stanley_violation() {
    golden(
        "check_stanley.txt",
        &["check", "1", "0", "1", "0", "0", "1", "0"],
        2,
    );
}

#[test]
fn check_realizable() {
    golden(
        "check_yes.txt",
        &["check", "1", "0", "0", "1", "0", "1", "0", "0", "0", "0"],
        0,
    );
}

#[test]
fn check_json() {
    golden(
        "check_stanley.json",
        &["--json", "check", "1", "0", "1", "0", "0", "1", "0"],
        2,
    );
}

#[test]
fn check_rejects_non_integers() {
    let (stdout, _, code) = run(&["check", "1", "zero", "1"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("status: invalid-input"));
}

#[test]
fn realize_nine_dimensional_witness() {
    golden(
        "realize_witness.txt",
        &["realize", "1", "0", "0", "1", "0", "1", "0", "0", "0", "0"],
        0,
    );
}

#[test]
fn realize_refuses_stanley_violation() {
    golden("realize_no.txt", &["realize", "1", "1", "0", "0", "1"], 2);
}

#[test]
fn realize_refuses_volume_four() {
    golden(
        "realize_out_of_scope.txt",
        &["realize", "1", "1", "1", "1"],
        3,
    );
}

#[test]
fn realize_writes_a_file_that_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("witness.json");
    let out_str = out.to_str().unwrap();
    let (_, _, code) = run(&[
        "realize", "1", "0", "0", "1", "0", "1", "0", "0", "0", "0", "--out", out_str,
    ]);
    assert_eq!(code, 0);
    let (stdout, _, code) = run(&["delta", out_str]);
    assert_eq!(code, 0);
    assert!(
        stdout.lines().any(|l| l == "delta: 1 0 0 1 0 1 0 0 0 0"),
        "{stdout}"
    );
    assert!(
        stdout.lines().any(|l| l == "normalized_volume: 3"),
        "{stdout}"
    );
}

#[test]
fn enumerate_dimension_three() {
    golden(
        "enumerate_d3.txt",
        &["enumerate", "--dim", "3", "--max-sum", "3"],
        0,
    );
}

#[test]
fn enumerate_dimension_five_volume_two_with_witnesses() {
    golden(
        "enumerate_d5_s2.txt",
        &["enumerate", "--dim", "5", "--max-sum", "2", "--realize-all"],
        0,
    );
}

#[test]
fn enumerate_dimension_two_is_out_of_scope() {
    golden("enumerate_d2.txt", &["enumerate", "--dim", "2"], 3);
}

#[test]
fn unknown_subcommand_is_invalid_input() {
    let (stdout, stderr, code) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(!stderr.is_empty());
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 3] = [
        &["enumerate", "--dim", "6", "--max-sum", "3", "--realize-all"],
        &["--json", "realize", "1", "0", "1", "1", "0", "0", "0"],
        &["delta", "inputs/reeve_r3.json", "--method", "both"],
    ];
    for args in cases {
        let first = run(args);
        for _ in 0..2 {
            assert_eq!(run(args), first, "{args:?}");
        }
    }
}
