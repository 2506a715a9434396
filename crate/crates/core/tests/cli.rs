use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use corrkit::cli::{self, RunOptions, TASK_REGISTRY};

const ALL_TASKS: &str = include_str!("fixtures/all_tasks.json");

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/all_tasks.json")
}

fn corrkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrkit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("corrkit-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn every_task_type_runs_and_passes() {
    let report = cli::run(ALL_TASKS, RunOptions::default()).unwrap();
    let failing: Vec<String> = report.tasks.iter().filter(|t| !t.passed()).map(|t| format!("#{} {}", t.index, t.task)).collect();
    assert!(failing.is_empty(), "{failing:?}\n{}", report.to_text());
    let used: BTreeSet<&str> = report.tasks.iter().map(|t| t.task.as_str()).collect();
    for (name, _) in TASK_REGISTRY {
        assert!(used.contains(name), "task type {name} is not exercised");
    }
}

#[test]
fn parallel_run_matches_sequential() {
    let seq = cli::run(ALL_TASKS, RunOptions::default()).unwrap().to_json();
    let par = cli::run(ALL_TASKS, RunOptions { parallel: true, ..RunOptions::default() }).unwrap().to_json();
    assert_eq!(seq, par);
}

#[test]
fn run_writes_the_report_file() {
    let dir = scratch("out");
    let out = dir.join("report.json");
    let o = corrkit(&["run", fixture().to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["schema"], cli::SCHEMA);
    assert_eq!(doc["passed"], true);
    assert!(doc["tasks"].as_array().unwrap().iter().all(|t| t.get("timing_ms").is_none()));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn text_format_and_timing() {
    let o = corrkit(&["demo", "crossed-z2", "--format", "text", "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().last().unwrap().ends_with("tasks passed"));
    let o = corrkit(&["demo", "crossed-z2", "--timing"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["tasks"][0]["timing_ms"].is_number());
}

#[test]
fn verification_failure_exits_one() {
    let dir = scratch("fail");
    let spec = dir.join("fail.json");
    std::fs::write(&spec, r#"{"graphs": {"E": {"kind": "explicit", "vertices": ["a", "b"], "edges": [{"name": "e", "src": "a", "dst": "b"}]}},
        "tasks": [{"task": "graph_regularity_report", "graph": "E", "expect_full": true}]}"#).unwrap();
    let o = corrkit(&["run", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], false);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn input_errors_exit_two() {
    let dir = scratch("input");
    let spec = dir.join("bad.json");
    std::fs::write(&spec, r#"{"algebras": {"A": {"kind": "group_algebra", "group": "nope"}}}"#).unwrap();
    let o = corrkit(&["run", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/algebras/A/group"));

    std::fs::write(&spec, "{ not json").unwrap();
    assert_eq!(corrkit(&["run", spec.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(corrkit(&["run", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(corrkit(&["demo", "nope"]).status.code(), Some(2));
    assert_eq!(corrkit(&["demo", "skw", "--tolerance", "-1"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_corrkit"))
        .args(["demo", "clifford"])
        .env("CORRKIT_TOLERANCE", "1e-7")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["tolerance"], 1e-7);
}

#[test]
fn export_dot_is_byte_identical() {
    let dir = scratch("dot");
    let (a, b) = (dir.join("a.dot"), dir.join("b.dot"));
    let spec = fixture();
    for out in [&a, &b] {
        let o = corrkit(&["export-dot", spec.to_str().unwrap(), "split", out.to_str().unwrap(), "--labeling", "split_f"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.contains("label=\"1\""));
    let parsed = corrkit::graphs::from_dot(&text).unwrap();
    assert_eq!(parsed.graph.num_edges(), 2);
    let o = corrkit(&["export-dot", spec.to_str().unwrap(), "nope", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}
