use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polargeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const O8: [&str; 4] = ["--kind", "quadric", "--n", "4"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn stats_of_rank_four_quadric() {
    let v = json(&run(&with(&["stats"], &O8)));
    assert_eq!(v["space"], "O+(8,2)");
    assert_eq!(v["type"], "Dn");
    assert_eq!(v["num_max_singulars"], 270);
    assert_eq!(v["product_formula"], 270);
    assert_eq!(v["dual_polar"]["diameter"], 4);
    let hs = v["half_spin"].as_array().unwrap();
    assert_eq!(hs.len(), 2);
    assert!(hs.iter().all(|f| f["points"] == 135 && f["degree"] == 70));
}

#[test]
fn symplectic_stats_have_no_half_spin_section() {
    let v = json(&run(&[
        "stats",
        "--kind",
        "symplectic",
        "--n",
        "3",
        "--q",
        "3",
    ]));
    assert_eq!(v["space"], "Sp(6,3)");
    assert_eq!(v["type"], "Cn");
    assert_eq!(v["num_max_singulars"], 1120);
    assert!(v.get("half_spin").is_none());
}

#[test]
fn theorem1_on_symplectic_space_is_a_usage_error() {
    let out = run(&["check", "theorem1", "--kind", "symplectic", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("type D"));
}

#[test]
fn unknown_check_is_a_usage_error() {
    assert_eq!(run(&["check", "bogus"]).status.code(), Some(2));
}

#[test]
fn over_budget_reports_estimate() {
    let out = run(&["stats", "--kind", "symplectic", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("75735") && err.contains("10000"), "{err}");
}

#[test]
fn failed_verdict_exits_one() {
    let out = run(&[
        "check",
        "counterexample",
        "--kind",
        "symplectic",
        "--n",
        "3",
        "--q",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn passing_check_exits_zero() {
    let v = json(&run(&with(
        &["check", "theorem1", "--exhaustive", "--family", "+"],
        &O8,
    )));
    assert_eq!(v["passed"], true);
    assert_eq!(v["mode"], "exhaustive");
    assert_eq!(v["pairs_checked"], 9045);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn timing_adds_elapsed() {
    let v = json(&run(&with(&["--timing", "stats"], &O8)));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn queries() {
    let q =
        |op: &str, a: &str, b: &str| json(&run(&with(&["query", op, a, b], &O8)))["value"].clone();
    assert_eq!(q("distance", "0", "5"), 1);
    assert_eq!(q("distance", "0", "0"), 0);
    assert_eq!(q("intersection-dim", "0", "0"), 4);
    // ID 1 lies in the other family
    let out = run(&with(
        &["query", "collinear", "0", "1", "--family", "+"],
        &O8,
    ));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&with(&["query", "distance", "0", "9999"], &O8));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn adjlist_export() {
    let out = run(&[
        "export-graph",
        "--kind",
        "symplectic",
        "--n",
        "2",
        "--format",
        "adjlist",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // Sp(4,2): 15 lines of the generalized quadrangle, each on 6 others
    assert_eq!(lines.len(), 15);
    assert!(lines.iter().all(|l| l.split_whitespace().count() == 7));
    assert!(lines[0].starts_with("0:"));
}

#[test]
fn dot_export() {
    let out = run(&with(
        &["export-graph", "--format", "dot", "--family", "-"],
        &O8,
    ));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph") && text.contains("dir=none"));
    assert_eq!(text.matches(" -> ").count(), 135 * 70 / 2);
}

#[test]
fn frame_through_spans_both() {
    let v = json(&run(&[
        "frame-through",
        "0",
        "1",
        "--kind",
        "symplectic",
        "--n",
        "3",
    ]));
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);
    assert_eq!(v["valid"], true);
    assert_eq!(
        (&v["spans_a"], &v["spans_b"]),
        (&Value::Bool(true), &Value::Bool(true))
    );
}
