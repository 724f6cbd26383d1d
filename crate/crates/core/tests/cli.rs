//! End-to-end tests of the taukit binary: exit codes, JSON-lines output,
//! the table file format, and the TAU_TABLE_CACHE directory.

use std::process::{Command, Output};

fn taukit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taukit"))
        .args(args)
        .env_remove("TAU_TABLE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn tau_prints_single_values() {
    let out = taukit(&["tau", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");

    let out = taukit(&["tau", "3"]);
    assert_eq!(stdout(&out), "252\n");

    let out = taukit(&["tau", "6"]);
    assert_eq!(stdout(&out), "-6048\n");
}

#[test]
fn tau_rejects_zero_and_garbage() {
    let out = taukit(&["tau", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = taukit(&["tau", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2), "clap usage errors exit 2");
}

#[test]
fn tau_table_file_has_header_plus_one_line_per_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    let out = taukit(&["tau", "--table", "100", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert_eq!(lines[0], "# tau-table max_n=100");
    assert_eq!(lines[1], "1\t1");
    assert_eq!(lines[100], format!("100\t{}", lines[100].split('\t').nth(1).unwrap()));
}

#[test]
fn verify_exits_zero_on_clean_sweeps() {
    for law in ["congruence-691", "congruence-32", "congruence-3", "deligne", "eigenform"] {
        let out = taukit(&["verify", law, "--pmax", "50"]);
        assert!(out.status.success(), "{law}");
        assert!(!out.stdout.is_empty(), "{law}");
        for line in stdout(&out).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["pass"], serde_json::Value::Bool(true), "{law}: {line}");
        }
    }
}

#[test]
fn verify_conjecture_one_mixes_both_record_kinds() {
    let out = taukit(&["verify", "conjecture-one", "--pmax", "60"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains(r#""law":"multiplicativity""#));
    assert!(text.contains(r#""law":"hecke-recursion""#));
}

#[test]
fn verify_rejects_unknown_law() {
    let out = taukit(&["verify", "congruence-7", "--pmax", "50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn local_roots_certifies_no_over_q5() {
    let out = taukit(&["local", "roots", "--p", "5", "--poly", "-2,0,1", "--precision", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "certified-no");
    assert_eq!(v["empty_at_precision"], 1);
}

#[test]
fn local_roots_inconclusive_exits_three() {
    // (x² − 2)² stays singular at every level over Z_7
    let out = taukit(&["local", "roots", "--p", "7", "--poly", "4,0,-4,0,1", "--precision", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn local_hensel_lifts_sqrt_two() {
    let out = taukit(&[
        "local", "hensel", "--p", "7", "--poly", "-2,0,1", "--start", "3", "--precision", "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["witness"], "10");
}

#[test]
fn local_hensel_rejects_singular_start() {
    let out = taukit(&[
        "local", "hensel", "--p", "5", "--poly", "0,0,1", "--start", "0", "--precision", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn local_square_reports_odd_valuation_at_two() {
    let out = taukit(&["local", "square", "--p", "2", "--value", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["square"], serde_json::Value::Bool(false));
    assert_eq!(v["reason"], "odd-valuation");
}

#[test]
fn local_square_accepts_rationals() {
    let out = taukit(&["local", "square", "--p", "7", "--value", "2/9", "--precision", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["square"], serde_json::Value::Bool(true));
}

#[test]
fn curve_emits_reduction_records() {
    let out = taukit(&["curve", "--a", "1", "--b", "0", "--pmax", "3"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], r#"{"p":"2","kind":"bad","affine_count":"2"}"#);
    assert_eq!(lines[1], r#"{"p":"3","kind":"good","affine_count":"3","a_p":"0"}"#);
}

#[test]
fn curve_rejects_singular_input() {
    let out = taukit(&["curve", "--a", "0", "--b", "0", "--pmax", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_taukit"))
        .args(["tau", "7"])
        .env("TAU_TABLE_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-16744\n");
    let cached = dir.path().join("tau-table-7.txt");
    assert!(cached.is_file(), "table was persisted");

    // second run hits the cache and agrees
    let out = Command::new(env!("CARGO_BIN_EXE_taukit"))
        .args(["tau", "7"])
        .env("TAU_TABLE_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-16744\n");
}
