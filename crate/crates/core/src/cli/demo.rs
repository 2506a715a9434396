//! Built-in spec files for `corrkit demo`.

const DEMOS: &[(&str, &str)] = &[
    ("skw", include_str!("demos/skw.json")),
    ("clifford", include_str!("demos/clifford.json")),
    ("crossed-z2", include_str!("demos/crossed-z2.json")),
];

pub fn demo_names() -> Vec<&'static str> {
    DEMOS.iter().map(|(n, _)| *n).collect()
}

/// The spec text of a named demo.
pub fn demo_spec(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
