//! File-driven front end: parse a spec file, resolve its named objects, run its tasks and
//! render a versioned report.
//!
//! Exit codes: 0 when every task passes, 1 on a verification failure, 2 on an input error.

mod demo;
mod resolve;
mod spec;
mod tasks;

use std::time::Instant;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::to_dot;
use crate::report::Tolerance;

pub use demo::{demo_names, demo_spec};
pub use resolve::Env;
pub use spec::{SpecFile, TaskSpec};
pub use tasks::{TaskOutcome, TASK_REGISTRY};

/// Version tag of the report format.
pub const SCHEMA: &str = "corrkit-report/1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Run-time options shared by `run` and `demo`.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub tolerance: Tolerance,
    pub seed: u64,
    pub parallel: bool,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tolerance: Tolerance::DEFAULT, seed: 0, parallel: false, timing: false }
    }
}

/// Result of one task.
#[derive(Debug)]
pub struct TaskRecord {
    pub index: usize,
    pub task: String,
    pub outcome: std::result::Result<TaskOutcome, Error>,
    pub millis: Option<f64>,
}

impl TaskRecord {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(o) if o.report.passed())
    }

    pub fn is_input_error(&self) -> bool {
        matches!(self.outcome, Err(Error::Input { .. }))
    }

    pub fn max_residual(&self) -> f64 {
        self.outcome.as_ref().map_or(f64::NAN, |o| o.report.max_residual())
    }
}

/// Results of a whole spec file, in declaration order.
#[derive(Debug)]
pub struct RunReport {
    pub tolerance: f64,
    pub tasks: Vec<TaskRecord>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.tasks.iter().all(TaskRecord::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.tasks.iter().any(TaskRecord::is_input_error) {
            EXIT_INPUT
        } else if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    /// The report document. Residuals are rounded to three significant digits.
    pub fn to_json(&self) -> Value {
        let tasks: Vec<Value> = self
            .tasks
            .iter()
            .map(|t| {
                let mut m = serde_json::Map::new();
                m.insert("index".into(), json!(t.index));
                m.insert("task".into(), json!(t.task));
                m.insert("passed".into(), json!(t.passed()));
                match &t.outcome {
                    Ok(o) => {
                        m.insert("report".into(), json!(o.report.name));
                        m.insert("max_residual".into(), json!(round3(o.report.max_residual())));
                        let checks: Vec<Value> = o
                            .report
                            .checks
                            .iter()
                            .map(|c| json!({"name": c.name, "passed": c.passed, "residual": round3(c.residual)}))
                            .collect();
                        m.insert("checks".into(), Value::Array(checks));
                        m.insert("witnesses".into(), json!(o.report.witnesses));
                        m.insert("outputs".into(), round_value(&Value::Object(o.outputs.clone())));
                    }
                    Err(e) => {
                        m.insert("max_residual".into(), Value::Null);
                        m.insert("checks".into(), json!([]));
                        m.insert("witnesses".into(), json!([e.to_string()]));
                        if let Error::Input { pointer, .. } = e {
                            m.insert("pointer".into(), json!(pointer));
                        }
                    }
                }
                if let Some(ms) = t.millis {
                    m.insert("timing_ms".into(), json!(round3(ms)));
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "tolerance": self.tolerance,
            "passed": self.passed(),
            "tasks": tasks,
        })
    }

    /// One line per task, followed by failing checks and witnesses.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let status = if t.passed() { "pass" } else { "FAIL" };
            match &t.outcome {
                Ok(o) => {
                    out.push_str(&format!("[{status}] #{} {} (max residual {:.2e})\n", t.index, t.task, o.report.max_residual()));
                    for c in o.report.failures() {
                        out.push_str(&format!("    failed: {} ({:.2e})\n", c.name, c.residual));
                    }
                    for w in &o.report.witnesses {
                        out.push_str(&format!("    witness: {w}\n"));
                    }
                }
                Err(e) => out.push_str(&format!("[{status}] #{} {}: {e}\n", t.index, t.task)),
            }
        }
        let passed = self.tasks.iter().filter(|t| t.passed()).count();
        out.push_str(&format!("{passed}/{} tasks passed\n", self.tasks.len()));
        out
    }
}

fn round3(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.2e}").parse().unwrap_or(x)
}

fn round_value(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round3(n.as_f64().unwrap_or(f64::NAN))),
        Value::Array(a) => Value::Array(a.iter().map(round_value).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), round_value(x))).collect()),
        other => other.clone(),
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", resolve::token(key))),
            Segment::Enum { variant } => out.push_str(&format!("/{}", resolve::token(variant))),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

fn parse_value<T: serde::de::DeserializeOwned>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = format!("{prefix}{}", pointer_of(e.path()));
        Error::Input { pointer, message: e.into_inner().to_string() }
    })
}

/// A parsed and resolved spec file, ready to run.
pub struct Prepared {
    pub env: Env,
    pub spec: SpecFile,
    pub tasks: Vec<TaskSpec>,
}

/// Parses `text` and resolves every reference, before any task runs.
pub fn prepare(text: &str) -> Result<Prepared> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Input { pointer: String::new(), message: format!("invalid JSON at line {}, column {}: {e}", e.line(), e.column()) })?;
    let spec: SpecFile = parse_value(value, "")?;
    let env = Env::build(&spec)?;
    let mut tasks = Vec::with_capacity(spec.tasks.len());
    for (i, raw) in spec.tasks.iter().enumerate() {
        let base = format!("/tasks/{i}");
        let task: TaskSpec = parse_value(raw.clone(), &base)?;
        for (field, kind, name) in tasks::references(&task) {
            if !env.has(kind, &name) {
                return Err(env.dangling(kind, &name, &format!("{base}/{field}")));
            }
        }
        tasks.push(task);
    }
    Ok(Prepared { env, spec, tasks })
}

fn run_one(p: &Prepared, i: usize, opts: RunOptions) -> TaskRecord {
    let cx = tasks::Ctx { env: &p.env, tol: opts.tolerance, seed: opts.seed, base: format!("/tasks/{i}") };
    let start = Instant::now();
    let outcome = tasks::run_task(&p.tasks[i], &cx);
    let millis = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    TaskRecord { index: i, task: p.tasks[i].name().to_string(), outcome, millis }
}

/// Runs all tasks in declaration order; with `parallel` they run on worker threads and are
/// merged back in order.
pub fn run_prepared(p: &Prepared, opts: RunOptions) -> RunReport {
    let n = p.tasks.len();
    let tasks = if opts.parallel && n > 1 {
        let workers = std::thread::available_parallelism().map_or(2, |k| k.get()).min(n);
        let next = std::sync::atomic::AtomicUsize::new(0);
        let mut records: Vec<TaskRecord> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    scope.spawn(|| {
                        let mut mine = Vec::new();
                        loop {
                            let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                            if i >= n {
                                break mine;
                            }
                            mine.push(run_one(p, i, opts));
                        }
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("task worker panicked")).collect()
        });
        records.sort_by_key(|r| r.index);
        records
    } else {
        (0..n).map(|i| run_one(p, i, opts)).collect()
    };
    RunReport { tolerance: opts.tolerance.get(), tasks }
}

/// Parses, resolves and runs a spec document.
pub fn run(text: &str, opts: RunOptions) -> Result<RunReport> {
    Ok(run_prepared(&prepare(text)?, opts))
}

/// Runs the named built-in fixture bundle.
pub fn demo(name: &str, opts: RunOptions) -> Result<RunReport> {
    let text = demo_spec(name).ok_or_else(|| Error::Input {
        pointer: String::new(),
        message: format!("unknown demo '{name}' (available: {})", demo_names().join(", ")),
    })?;
    run(text, opts)
}

/// DOT text for a named graph of a spec document, with the edge labels of `labeling` if given.
pub fn export_dot(text: &str, graph: &str, labeling: Option<&str>) -> Result<String> {
    let p = prepare(text)?;
    let g = p.env.graph(graph, "")?;
    let lab = match labeling {
        Some(l) => {
            let entry = p.env.labeling(l, "")?;
            if entry.graph != graph {
                return Err(Error::Input { pointer: format!("/labelings/{}", resolve::token(l)), message: format!("'{l}' labels '{}', not '{graph}'", entry.graph) });
            }
            Some(&entry.labeling)
        }
        None => None,
    };
    Ok(to_dot(g, graph, lab))
}

/// Renders an input error as a small JSON document.
pub fn input_error_json(e: &Error) -> Value {
    match e {
        Error::Input { pointer, message } => json!({"schema": SCHEMA, "error": "input", "pointer": pointer, "message": message}),
        other => json!({"schema": SCHEMA, "error": "input", "pointer": "", "message": other.to_string()}),
    }
}

#[cfg(test)]
mod tests;
