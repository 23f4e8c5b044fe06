use std::process::{Command, Output};

use tempfile::TempDir;

fn latticepath(cache: &TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticepath"))
        .env("LATTICEPATH_CACHE", cache.path())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let dir = TempDir::new().unwrap();
    let o = latticepath(&dir, &["compose", "--op", "1|12|21", "--with", "213|13|23", "--with", "122|211"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "213|13455|54423\n");
    assert_eq!(stdout(&latticepath(&dir, &["complexity", "--op", "1|1|1|323"])), "2\n");
    assert_eq!(stdout(&latticepath(&dir, &["labellings", "--edges", "2>1,2>3", "--count"])), "11\n");
    assert_eq!(stdout(&latticepath(&dir, &["graph", "--op", "12321434", "-m", "3"])), "1>3,2>3,3>4\n");
    let joined = latticepath(
        &dir,
        &["join", "--lhs", "1|1212|2|2", "--lhs-cuts", "2", "--rhs", "1|12|2|2|21", "--rhs-cuts", "3", "-m", "3"],
    );
    assert_eq!(stdout(&joined), "1|12123|34|42|24|43\n");
}

#[test]
fn formats() {
    let dir = TempDir::new().unwrap();
    let dot = stdout(&latticepath(&dir, &["--format", "dot", "graph", "--op", "12321434", "-m", "3"]));
    assert!(dot.starts_with("digraph underlying {\n  1;\n  2;\n  3;\n  4;\n"));
    assert!(dot.contains("  3 -> 4;\n"));

    let json = stdout(&latticepath(&dir, &["--format", "json", "homology", "--edges", "2>1,2>3"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["verdict"], "collapsible");
    assert_eq!(v["objects"], 11);
    assert!(json.ends_with("}\n"));

    let csv = stdout(&latticepath(&dir, &["--format", "csv", "counts", "-m", "2", "-b", "5"]));
    assert!(csv.starts_with("k,arities,bars,count\n"));
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 4));

    let bad = latticepath(&dir, &["--format", "csv", "complexity", "--op", "1|1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(latticepath(&dir, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(latticepath(&dir, &["complexity", "--op", "1|0"]).status.code(), Some(2));
    assert_eq!(latticepath(&dir, &["compose", "--op", "1|1"]).status.code(), Some(2));
    assert_eq!(latticepath(&dir, &["labellings", "--edges", "1-2"]).status.code(), Some(2));
}

#[test]
fn generate_then_contains() {
    let dir = TempDir::new().unwrap();
    let first = latticepath(&dir, &["generate", "-m", "2", "-b", "6"]);
    assert!(stdout(&first).contains(" generated hat-m2-b6.v1.txt"));
    let second = latticepath(&dir, &["generate", "-m", "2", "-b", "6"]);
    assert!(stdout(&second).contains(" loaded hat-m2-b6.v1.txt"));
    let text = std::fs::read_to_string(dir.path().join("hat-m2-b6.v1.txt")).unwrap();
    for line in text.lines().skip(2).filter(|l| !l.starts_with('#')) {
        let key = line.split('\t').next().unwrap();
        let o = latticepath(&dir, &["contains", "--op", key, "-m", "2", "-b", "6"]);
        assert_eq!(stdout(&o), "member\n", "{key}");
    }
    let o = latticepath(&dir, &["contains", "--op", "1212", "-m", "2", "-b", "6"]);
    assert_eq!(stdout(&o), "notmember\n");
    let o = latticepath(&dir, &["contains", "--op", "1|1|1|1|1|1", "-m", "2", "-b", "6"]);
    assert_eq!(stdout(&o), "unknown\n");
}

#[test]
fn verification_exit_status() {
    let dir = TempDir::new().unwrap();
    let ok = latticepath(&dir, &["verify", "--suite", "nerves", "--suite", "operad-laws", "--instances", "20"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("nerves: ok "));
    // uniqueness of level-3 lifts has counterexamples
    let lift = latticepath(&dir, &["verify", "--suite", "lift", "-m", "3", "-b", "6", "--max-tokens", "5"]);
    assert_eq!(lift.status.code(), Some(1));
    assert!(stdout(&lift).contains("counterexample"));
    let axioms = latticepath(&dir, &["--seed", "3", "check-axioms", "-m", "4", "-b", "9", "--instances", "20"]);
    assert_eq!(axioms.status.code(), Some(0));
}

#[test]
fn lift_report() {
    let dir = TempDir::new().unwrap();
    let o = latticepath(&dir, &["--format", "json", "lift", "--op", "1|1 :: (A) -> C", "-m", "2", "-b", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["input"], "1|1 :: (A) -> C");
    assert_eq!(v["unique"], true);
    assert!(v["inserted_colours"].as_array().is_some());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["--seed", "11", "--format", "json", "check-axioms", "-m", "3", "-b", "7", "--instances", "30"];
    let a = latticepath(&dir, &args);
    let b = latticepath(&dir, &args);
    assert_eq!(a.stdout, b.stdout);
    let c = latticepath(
        &dir,
        &["--seed", "12", "--format", "json", "check-axioms", "-m", "3", "-b", "7", "--instances", "30"],
    );
    assert_ne!(a.stdout, c.stdout);
}
