use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use indlift::suite::SuiteReport;

fn indlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indlift")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn run_writes_a_parseable_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = indlift(&["run", "--suite", "identity-lift", "--scope-size", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = SuiteReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.suite, "identity-lift");
    assert_eq!(report.scope.max_size, 2);
}

#[test]
fn text_reports_end_with_the_exit_code() {
    let o = indlift(&["run", "--suite", "finset-all-invariance", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("lift/invariance") && text.trim_end().ends_with("exit 0"), "{text}");
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(indlift(&["run", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(indlift(&["run", "--suite", "identity-lift", "--scope-size", "99"]).status.code(), Some(2));
    assert_eq!(indlift(&["replay", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn list_is_stable_and_honours_disable() {
    let (a, b) = (indlift(&["list"]), indlift(&["list"]));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("graph-to-set") && text.contains("conn-graph-simple"));
    let off = String::from_utf8(indlift(&["list", "--disable", "fin-graph"]).stdout).unwrap();
    assert!(!off.contains("graph-to-set"));
}

#[test]
fn replay_detects_tampered_fixtures() {
    let path = fixture("finset-all-invariance.json");
    assert_eq!(indlift(&["replay", path.to_str().unwrap()]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let tampered = dir.path().join("tampered.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("\"relation\": \"pullback[fin-set/all]\"", "\"relation\": \"pullback[fin-set/mono]\"");
    std::fs::write(&tampered, text).unwrap();
    assert_eq!(indlift(&["replay", tampered.to_str().unwrap()]).status.code(), Some(1));
}
