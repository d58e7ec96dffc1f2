// Copyright 2026 The pathauth Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pathauth_core::pdp::DecisionTrace;
use serde_json::{json, Value};
use tempfile::TempDir;

fn pathauth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathauth")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn fixture(dir: &TempDir, name: &str) -> PathBuf {
    let p = dir.path().join(format!("{name}.json"));
    let o = pathauth(&["fixture", name, "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    p
}

fn with_ws<'a>(ws: &'a Path, args: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["-w", ws.to_str().unwrap()];
    v.extend_from_slice(args);
    v
}

fn edit(path: &Path, f: impl FnOnce(&mut Value)) {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut doc);
    std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
}

#[test]
fn shipped_fixtures_validate() {
    let dir = TempDir::new().unwrap();
    for name in ["unix", "rbac", "corporate"] {
        let p = fixture(&dir, name);
        let o = pathauth(&with_ws(&p, &["validate"]));
        assert_eq!((code(&o), stdout(&o).trim()), (0, "valid"), "{name}: {}", stderr(&o));
    }
}

#[test]
fn fixture_to_stdout_matches_file() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&["fixture", "corporate"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&p).unwrap());
}

#[test]
fn fixture_shapes() {
    let unix: Value = serde_json::from_slice(&pathauth(&["fixture", "unix"]).stdout).unwrap();
    let rules = unix["authorization_system"]["principal_rules"].as_array().unwrap();
    assert_eq!(rules.len(), 3);
    assert_eq!(rules[2]["path"], "TOP");
    let corp: Value = serde_json::from_slice(&pathauth(&["fixture", "corporate"]).stdout).unwrap();
    assert_eq!(corp["authorization_system"]["auth_rules"].as_array().unwrap().len(), 11);
    assert_eq!(corp["requests"].as_array().unwrap().len(), 5);
}

#[test]
fn eval_allow_and_deny_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&with_ws(&p, &["eval", "-s", "Tech.#2", "-o", "Test.Spec.#1", "-a", "read"]));
    assert_eq!((code(&o), stdout(&o).trim()), (0, "ALLOW"));
    let o = pathauth(&with_ws(&p, &["eval", "-s", "Sales.#2", "-o", "Func.Spec.#1", "-a", "write"]));
    assert_eq!((code(&o), stdout(&o).trim()), (1, "DENY"));
}

#[test]
fn eval_with_oracle_matcher_agrees() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let a = pathauth(&with_ws(&p, &["eval-batch"]));
    let b = pathauth(&with_ws(&p, &["eval-batch", "--matcher", "nfa-oracle"]));
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn explain_emits_parseable_trace() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&with_ws(&p, &["--explain", "eval", "-s", "CEO", "-o", "Proj.#1 Report#1", "-a", "read"]));
    assert_eq!(code(&o), 1);
    assert_eq!(stderr(&o).trim(), "DENY (system default)");
    let trace: DecisionTrace = serde_json::from_slice(&o.stdout).expect("stdout is one trace");
    assert!(trace.matched_principals.is_empty());
    assert_eq!(trace.to_string(), "DENY (system default)");
}

#[test]
fn metrics_lines_follow_decision() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&with_ws(&p, &["--metrics", "eval", "-s", "CTO", "-o", "Proj.#1 Report#1", "-a", "read"]));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("ALLOW"));
    assert!(lines.all(|l| l.starts_with("  rule ")), "{out}");
}

#[test]
fn unknown_subject_is_an_error() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&with_ws(&p, &["eval", "-s", "Nobody", "-o", "Proj.#1", "-a", "read"]));
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error:"), "{}", stderr(&o));
}

#[test]
fn match_rows() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let rows = [
        ("P . ~R . (~M)+", "Sales.#2", "Func.Spec.#1", "yes"),
        ("P . ~R . (~M)+", "Tech.#2", "Test.Spec.#1", "yes"),
        ("S . ~R . (~M)+", "Tech.#2", "Func.Spec.#1", "yes"),
        ("S+ . ~M . S . ~D . (~M)+", "CTO", "Proj.#1 Report#1", "yes"),
        ("S+ . ~M . S . ~D . (~M)+", "CEO", "Proj.#1 Report#1", "no"),
    ];
    for (path, s, o, want) in rows {
        let out = pathauth(&with_ws(&p, &["match", "-s", s, "-o", o, "-p", path]));
        assert!(stdout(&out).starts_with(&format!("found={want} ")), "{path} {s}->{o}: {}", stdout(&out));
        assert_eq!(code(&out), if want == "yes" { 0 } else { 1 });
    }
}

#[test]
fn diamond_matches_self() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&with_ws(&p, &["match", "-s", "CEO", "-o", "CEO", "-p", "@"]));
    assert!(stdout(&o).starts_with("found=yes"));
}

#[test]
fn bad_condition_is_an_error() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    let o = pathauth(&with_ws(&p, &["match", "-s", "CEO", "-o", "CTO", "-p", "M . Q"]));
    assert_eq!(code(&o), 2);
}

#[test]
fn simplify_prints_canonical_form() {
    let o = pathauth(&["simplify", "~(a . b+)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(~b)+ . ~a"));
    let o = pathauth(&["simplify", "@ . a . @"]);
    assert_eq!(stdout(&o).trim(), "a");
    let o = pathauth(&["simplify", "~@+"]);
    assert_eq!(stdout(&o).trim(), "@");
}

#[test]
fn oracle_check_random_and_workspace() {
    let o = pathauth(&["oracle-check", "--seed", "1", "--trials", "1000"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1000/1000 agree"));
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "rbac");
    let o = pathauth(&with_ws(&p, &["oracle-check"]));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let line = stdout(&o);
    let (a, b) = line.trim().trim_end_matches(" agree").split_once('/').unwrap();
    assert_eq!(a, b);
}

#[test]
fn impermissible_edge_is_reported() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "corporate");
    edit(&p, |d| {
        d["graph"]["edges"].as_array_mut().unwrap().push(json!({"from": "CEO", "to": "CTO", "label": "C"}));
    });
    let o = pathauth(&with_ws(&p, &["validate"]));
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("CEO"), "{}", stderr(&o));
}

#[test]
fn top_not_last_is_rejected() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "unix");
    edit(&p, |d| d["authorization_system"]["principal_rules"].as_array_mut().unwrap().swap(1, 2));
    let o = pathauth(&with_ws(&p, &["validate"]));
    assert_eq!(code(&o), 2);
}

#[test]
fn empty_and_missing_files_are_errors() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("empty.json");
    std::fs::write(&p, "").unwrap();
    assert_eq!(code(&pathauth(&with_ws(&p, &["validate"]))), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&pathauth(&with_ws(&missing, &["validate"]))), 2);
    assert_eq!(code(&pathauth(&["validate"])), 2);
}

#[test]
fn pretty_printed_input_resaves_identically() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "rbac");
    let original = std::fs::read_to_string(&p).unwrap();
    // compact rewrite must load back to the same canonical document
    let compact: Value = serde_json::from_str(&original).unwrap();
    std::fs::write(&p, serde_json::to_string(&compact).unwrap()).unwrap();
    let ws = pathauth_core::io::load_workspace(&p).unwrap();
    assert_eq!(ws.to_json(), original);
}
