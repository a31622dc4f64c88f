use std::process::{Command, Output};

use gpoly_core::engine::{ClassRow, ConjectureReport, VerifyReport};
use gpoly_core::TableReport;

fn gpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpoly"))
        .args(args)
        .env_remove("GPOLY_DATA_DIR")
        .output()
        .expect("spawn gpoly")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    let o = gpoly(&["compute", "--type", "B", "--rank", "3", "--class", "(-),(1^3)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("h        1 + 2q + 6q^2 + 6q^3 + 6q^4 + 2q^5 + q^6"));

    let o = gpoly(&["compute", "--type", "I", "--param", "7", "--class", "k=3", "--format", "json"]);
    let row: ClassRow = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(row.g_coeffs, vec![1, 0, 0, -1, -1, 0, 0, 1]);

    let o = gpoly(&["compute", "--type", "A2", "--class", "(3)", "--format", "json"]);
    let row: ClassRow = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(row.g_coeffs, vec![1, -1, -1, 1]);
}

#[test]
fn words_pick_classes() {
    let by_word = gpoly(&["compute", "--type", "H", "--rank", "3", "--word", "rstsrstst", "--format", "json"]);
    let by_name = gpoly(&["compute", "--type", "H", "--rank", "3", "--class", "rstsrstst", "--format", "json"]);
    assert!(by_word.status.success());
    assert_eq!(by_word.stdout, by_name.stdout);
}

#[test]
fn csv_header_and_quoting() {
    let o = gpoly(&["table", "--type", "B", "--rank", "3", "--cuspidal", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,epsilon,m,g_coeffs,h_coeffs"));
    assert_eq!(lines.next(), Some("\"(-),(3)\",-1,0,1 -1 0 -1 1 -1 1 0 1 -1,1 2 3 3 3 2 1"));
}

#[test]
fn json_round_trips() {
    let o = gpoly(&["table", "--type", "F", "--rank", "4", "--format", "json"]);
    let t: TableReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(t.rows.len(), 25);
    assert_eq!(serde_json::to_string_pretty(&t).unwrap() + "\n", stdout(&o));

    let o = gpoly(&["conjecture", "--type", "D", "--rank", "5", "--format", "json"]);
    let c: ConjectureReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(c.passed);
    assert_eq!(serde_json::to_string_pretty(&c).unwrap() + "\n", stdout(&o));

    let o = gpoly(&["verify", "--which", "coxeter", "--format", "json"]);
    let v: VerifyReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.passed);
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--type", "B", "--rank", "6", "--format", "csv"];
    assert_eq!(gpoly(&args).stdout, gpoly(&args).stdout);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--which", "coxeter", "--all-supported"][..],
        &["verify", "--which", "dihedral", "--max-n", "30"],
        &["verify", "--which", "palindromy", "--type", "B", "--rank", "6"],
        &["verify", "--which", "recursion", "--type", "F4"],
    ] {
        let o = gpoly(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn conjecture_examples_pass() {
    for args in [
        &["conjecture", "--type", "B", "--rank", "5", "--cuspidal"][..],
        &["conjecture", "--type", "D", "--rank", "6"],
        &["conjecture", "--type", "A", "--rank", "6"],
    ] {
        let o = gpoly(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("all pass"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(gpoly(&["compute", "--type", "B"]).status.code(), Some(2));
    assert_eq!(gpoly(&["compute", "--type", "Q", "--rank", "3", "--class", "x"]).status.code(), Some(2));
    assert_eq!(gpoly(&["compute", "--type", "B", "--rank", "3", "--class", "(7)"]).status.code(), Some(2));
    assert_eq!(gpoly(&["table", "--type", "E", "--rank", "6"]).status.code(), Some(3));
    assert_eq!(gpoly(&["table", "--type", "A", "--rank", "9"]).status.code(), Some(3));
    assert_eq!(gpoly(&["compute", "--type", "F4", "--class", "nonexistent"]).status.code(), Some(3));
    assert_eq!(gpoly(&["compute", "--type", "B6", "--word", "1 2"]).status.code(), Some(3));
    assert_eq!(gpoly(&["compute", "--type", "B3", "--word", "xyz"]).status.code(), Some(2));
}

#[test]
fn data_directory_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let missing = gpoly(&["--data-dir", dir.path().to_str().unwrap(), "table", "--type", "F4"]);
    assert_eq!(missing.status.code(), Some(4));

    let text = gpoly_core::DataStore::bundled().read("H3.json").unwrap();
    let bad = text.replacen("\"size\": 15", "\"size\": 16", 1);
    assert_ne!(bad, text);
    std::fs::write(dir.path().join("H3.json"), bad).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gpoly"))
        .args(["table", "--type", "H3"])
        .env("GPOLY_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("violated invariant"));
}

#[test]
fn selfcheck_passes() {
    let o = gpoly(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
