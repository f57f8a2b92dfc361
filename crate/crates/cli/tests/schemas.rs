//! Every JSON document the CLI reads or writes conforms to its published
//! schema under `schemas/`.

mod common;

use common::{cli, path_str, REFERENCE_LABELING};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema(name: &str) -> JSONSchema {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    JSONSchema::compile(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_conforms(name: &str, doc: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{name} schema violated: {msgs:#?}\n{doc:#}");
}

fn stdout_json(args: &[&str]) -> Value {
    let r = cli(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.json()
}

#[test]
fn graph_outputs() {
    for (m, n) in [("3", "2"), ("5", "5")] {
        assert_conforms("graph", &stdout_json(&["construct", "--m", m, "--n", n]));
    }
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let summary = stdout_json(&[
        "construct",
        "--m",
        "4",
        "--n",
        "3",
        "--out",
        path_str(&out),
        "--json",
    ]);
    assert_conforms("construct", &summary);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_conforms("graph", &file);
    assert_conforms(
        "construct",
        &stdout_json(&[
            "construct",
            "--m",
            "3",
            "--n",
            "2",
            "--format",
            "dot",
            "--json",
        ]),
    );
    let path_graph: Value = serde_json::from_str(&radiobook_core::io::graph_to_json(
        &radiobook_core::build_path(4).unwrap(),
    ))
    .unwrap();
    assert_conforms("graph", &path_graph);
}

#[test]
fn labeling_documents() {
    let fixture: Value =
        serde_json::from_str(&std::fs::read_to_string(REFERENCE_LABELING).unwrap()).unwrap();
    assert_conforms("labeling", &fixture);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.json");
    let summary = stdout_json(&[
        "label",
        "--m",
        "5",
        "--n",
        "7",
        "--out",
        path_str(&out),
        "--json",
    ]);
    assert_conforms("label", &summary);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_conforms("labeling", &file);
    assert_conforms(
        "label",
        &stdout_json(&["label", "--m", "4", "--n", "5", "--json"]),
    );
}

#[test]
fn labeling_schema_rejects_mixed_addressing() {
    let s = schema("labeling");
    let bad = serde_json::json!({"labels": [{"vertex": 0, "spoke": 1, "page": 1, "label": 3}]});
    assert!(!s.is_valid(&bad));
    let missing = serde_json::json!({"labels": [{"spoke": 1, "label": 3}]});
    assert!(!s.is_valid(&missing));
}

#[test]
fn bounds_outputs() {
    for (m, n) in [("5", "5"), ("4", "5"), ("3", "4")] {
        assert_conforms(
            "bounds",
            &stdout_json(&["bounds", "--m", m, "--n", n, "--json"]),
        );
    }
}

#[test]
fn validation_outputs() {
    assert_conforms(
        "validation",
        &stdout_json(&[
            "verify",
            "--m",
            "5",
            "--n",
            "5",
            "--labeling",
            REFERENCE_LABELING,
            "--json",
        ]),
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"labels":[{"vertex":0,"label":0},{"vertex":1,"label":1},{"vertex":2,"label":2}]}"#,
    )
    .unwrap();
    let g = dir.path().join("p3.json");
    std::fs::write(
        &g,
        radiobook_core::io::graph_to_json(&radiobook_core::build_path(3).unwrap()),
    )
    .unwrap();
    let r = cli(&[
        "verify",
        "--graph",
        path_str(&g),
        "--labeling",
        path_str(&bad),
        "--json",
    ]);
    assert_eq!(r.code, 1);
    assert_conforms("validation", &r.json());
}

#[test]
fn solve_outputs() {
    assert_conforms(
        "solve",
        &stdout_json(&["solve", "--m", "3", "--n", "3", "--json"]),
    );
    assert_conforms(
        "solve",
        &stdout_json(&[
            "solve",
            "--m",
            "5",
            "--n",
            "5",
            "--node-budget",
            "5",
            "--json",
        ]),
    );
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p.json");
    std::fs::write(
        &g,
        radiobook_core::io::graph_to_json(&radiobook_core::build_path(5).unwrap()),
    )
    .unwrap();
    assert_conforms(
        "solve",
        &stdout_json(&[
            "solve",
            "--graph",
            path_str(&g),
            "--upper-start",
            "9",
            "--json",
        ]),
    );
}

#[test]
fn table_outputs() {
    assert_conforms(
        "table",
        &stdout_json(&["table", "--m-range", "3..5", "--n-range", "3,5", "--json"]),
    );
    assert_conforms(
        "table",
        &stdout_json(&[
            "table",
            "--m-range",
            "3",
            "--n-range",
            "2..3",
            "--exact",
            "--json",
        ]),
    );
}

#[test]
fn error_outputs() {
    for args in [
        &["bogus", "--json"][..],
        &["bounds", "--m", "5", "--json"],
        &[
            "verify",
            "--m",
            "5",
            "--n",
            "5",
            "--labeling",
            "/nonexistent.json",
            "--json",
        ],
        &["label", "--m", "3", "--n", "5", "--json"],
        &["solve", "--m", "9", "--n", "9", "--json"],
    ] {
        let r = cli(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert_eq!(r.stdout, "");
        assert_conforms("error", &r.error_json());
    }
}
