use std::process::{Command, Output};

fn glasspath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glasspath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn exit_codes() {
    assert_eq!(glasspath(&["count", "2,1,1"]).status.code(), Some(0));
    assert_eq!(glasspath(&["exists", "2", "0", "0"]).status.code(), Some(1));
    assert_eq!(glasspath(&["count", "2;1"]).status.code(), Some(2));
    assert_eq!(glasspath(&["gf", "9", "1"]).status.code(), Some(2));
    assert_eq!(glasspath(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        glasspath(&["count", "1,2", "--backend", "closed3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(glasspath(&["words", "12", "14"]).status.code(), Some(4));
}

#[test]
fn errors_go_to_stderr() {
    let out = glasspath(&["count", "1,2", "--backend", "closed3"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("closed3"));
}

#[test]
fn count_and_exists() {
    assert_eq!(
        stdout(&glasspath(&["count", "7,5,7", "--backend", "closed3"])),
        "840\n"
    );
    let all = stdout(&glasspath(&["count", "3,2,2,1", "--all-backends"]));
    let names: Vec<&str> = all.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(names, ["oracle", "dp", "recursion", "gf", "MATCH"]);
    assert_eq!(
        stdout(&glasspath(&["exists", "2", "1", "1"])),
        "FEASIBLE 2131\n"
    );
}

#[test]
fn matrix_diagonals_listing() {
    let out = stdout(&glasspath(&["matrix", "7", "14", "--diagonals"]));
    let (matrix, diagonals) = out.split_once("\n\n").expect("blank line before diagonals");
    assert_eq!(matrix.lines().count(), 14);
    assert!(matrix.lines().all(|l| l.split('\t').count() == 14));
    let s11 = diagonals
        .split("S\t")
        .find(|block| block.starts_with("7\t11\t"))
        .expect("S^7_11 listed");
    let rows: Vec<&str> = s11.lines().collect();
    assert!(rows[0].starts_with("7\t11\tstart\t3\t5"));
    assert!(rows[1].starts_with("d0\t56\t280\t840\t"));
    assert!(rows[5].starts_with("d4\t56\t56"));
    assert!(rows[6].starts_with("d5\t0"));
}

#[test]
fn gf_listing() {
    let out = stdout(&glasspath(&["gf", "3", "2"]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("(1+t2+t3-t2^2*t3)/(1-t1*t2-t1*t3-t2*t3+t1*t2^2*t3)")
    );
    let records: Vec<serde_json::Value> = lines.map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 6);
    assert_eq!(records[0]["v"], serde_json::json!([0, 0, 0]));
    assert!(records.iter().all(|r| r["coeff"] == "1"));
}

#[test]
fn words_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.svg");
    let path_str = path.to_str().unwrap();
    let out = glasspath(&[
        "words", "--vector", "2,1,1", "--svg", path_str, "--index", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2131\n3121\n");
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"points="0,0 40,120 80,40 120,80 160,40""#));

    let out = glasspath(&["words", "--vector", "1,0,0", "--svg", path_str]);
    assert_eq!(out.status.code(), Some(2));
    let out = glasspath(&["words", "3", "0", "--svg", path_str]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!std::fs::read_to_string(&path).unwrap().contains("polyline"));
}
