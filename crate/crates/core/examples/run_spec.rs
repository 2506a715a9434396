//! Running a spec document through the library front end.

use corrkit::cli::{self, RunOptions};

const SPEC: &str = r#"{
  "groups": { "Z2": { "kind": "cyclic", "order": 2 } },
  "algebras": {
    "c0": { "kind": "function_algebra", "group": "Z2" },
    "CZ2": { "kind": "group_algebra", "group": "Z2" }
  },
  "gradings": { "canonical": { "kind": "canonical", "algebra": "CZ2" } },
  "actions": { "shift": { "kind": "translation", "algebra": "c0" } },
  "tasks": [
    { "task": "twisted_algebra", "action": "shift", "grading": "canonical", "expect_dim": 4, "expect_signature": [2] },
    { "task": "heisenberg_model", "group": "Z2" }
  ]
}"#;

fn main() -> corrkit::Result<()> {
    let report = cli::run(SPEC, RunOptions::default())?;
    print!("{}", report.to_text());
    println!("exit code {}", report.exit_code());
    Ok(())
}
