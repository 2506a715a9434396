use super::*;

const SKW: &str = include_str!("demos/skw.json");

fn input_pointer(r: Result<impl std::fmt::Debug>) -> String {
    match r {
        Err(Error::Input { pointer, .. }) => pointer,
        other => panic!("expected an input error, got {other:?}"),
    }
}

#[test]
fn registry_names_are_task_tags() {
    for (name, op) in TASK_REGISTRY {
        let parsed: std::result::Result<TaskSpec, _> = serde_json::from_value(json!({ "task": name }));
        if let Err(e) = parsed {
            assert!(!e.to_string().contains("unknown variant"), "{name}: {e}");
        }
        let (module, _) = op.split_once("::").expect("module::op");
        assert!(
            ["fdalg", "hilbmod", "twist", "balanced", "graphs", "fock"].contains(&module),
            "{name} -> {op}"
        );
    }
}

#[test]
fn registry_covers_operations() {
    let ops: Vec<&str> = TASK_REGISTRY.iter().map(|(_, op)| *op).collect();
    for op in [
        "fdalg::multiply",
        "fdalg::verify_action",
        "hilbmod::katsura_ideal",
        "hilbmod::linking_algebra",
        "twist::twisted_algebra",
        "twist::twisted_correspondence",
        "twist::flip_sigma23",
        "balanced::balanced_subalgebra",
        "balanced::conditional_expectation",
        "graphs::skew_product",
        "graphs::verify_graph_product_isomorphism",
        "fock::fock_toeplitz_rep",
        "fock::cp_product_check",
        "fock::generator_factorization_check",
    ] {
        assert!(ops.contains(&op), "missing {op}");
    }
    let mut names: Vec<&str> = TASK_REGISTRY.iter().map(|(n, _)| *n).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), TASK_REGISTRY.len());
}

#[test]
fn empty_spec_passes() {
    let r = run(r#"{"tasks": []}"#, RunOptions::default()).unwrap();
    assert!(r.passed());
    assert_eq!(r.exit_code(), EXIT_PASS);
    assert_eq!(r.to_json()["schema"], SCHEMA);
}

#[test]
fn dangling_references_carry_pointers() {
    let bad_group = r#"{"algebras": {"A": {"kind": "group_algebra", "group": "G"}}}"#;
    assert_eq!(input_pointer(prepare(bad_group).map(|_| ())), "/algebras/A/group");
    let bad_task = r#"{"tasks": [{"task": "heisenberg_model", "group": "G"}]}"#;
    assert_eq!(input_pointer(prepare(bad_task).map(|_| ())), "/tasks/0/group");
}

#[test]
fn malformed_input_is_an_input_error() {
    assert!(matches!(prepare("{"), Err(Error::Input { .. })));
    let wrong_type = r#"{"groups": {"Z": {"kind": "cyclic", "order": "two"}}}"#;
    assert!(input_pointer(prepare(wrong_type).map(|_| ())).starts_with("/groups/Z"));
    let unknown = r#"{"tasks": [{"task": "no_such_task"}]}"#;
    assert!(input_pointer(prepare(unknown).map(|_| ())).starts_with("/tasks/0"));
    let extra = r#"{"widgets": {}}"#;
    assert!(matches!(prepare(extra), Err(Error::Input { .. })));
}

#[test]
fn failing_expectation_exits_one() {
    let text = r#"{"algebras": {"M": {"kind": "matrices", "n": 2}},
        "tasks": [{"task": "operator_norm", "algebra": "M", "a": {"blocks": [[[0, 3], [0, 0]]]}, "expect": 2}]}"#;
    let r = run(text, RunOptions::default()).unwrap();
    assert_eq!(r.exit_code(), EXIT_FAIL);
    assert!(r.to_text().contains("FAIL"));
}

#[test]
fn export_dot_of_empty_graph() {
    let text = r#"{"graphs": {"G": {"kind": "explicit", "vertices": []}}}"#;
    let dot = export_dot(text, "G", None).unwrap();
    assert_eq!(dot.lines().count(), 2);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn export_dot_of_skew_product() {
    let dot = export_dot(SKW, "P", None).unwrap();
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 2);
    for e in edges {
        let (src, rest) = e.trim().split_once(" -> ").unwrap();
        let dst = rest.split(" [").next().unwrap();
        assert_eq!(src, dst, "{e}");
    }
    let labeled = export_dot(SKW, "F", Some("delta")).unwrap();
    assert!(labeled.contains("label=\"1\"") || labeled.contains("label=1"), "{labeled}");
    assert!(export_dot(SKW, "E", Some("delta")).is_err());
}

#[test]
fn demos_are_deterministic() {
    for name in demo_names() {
        let a = demo(name, RunOptions::default()).unwrap().to_json();
        let b = demo(name, RunOptions::default()).unwrap().to_json();
        assert_eq!(a, b, "{name}");
        let par = demo(name, RunOptions { parallel: true, ..RunOptions::default() }).unwrap().to_json();
        assert_eq!(a, par, "{name}");
        assert_eq!(a["passed"], true, "{name}");
    }
    assert!(demo("nope", RunOptions::default()).is_err());
}

#[test]
fn seed_changes_random_instances_only() {
    let text = r#"{"tasks": [{"task": "random_graph_products", "count": 3}]}"#;
    let a = run(text, RunOptions { seed: 1, ..RunOptions::default() }).unwrap();
    let b = run(text, RunOptions { seed: 1, ..RunOptions::default() }).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.passed());
}
