use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn entwine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entwine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn export(dir: &TempDir, name: &str, field: &str) -> String {
    let path = dir.path().join(format!("{name}-{field}.json"));
    let p = path.to_str().unwrap();
    let o = entwine(&["corpus", "export", name, "--field", field, "--output", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    p.to_string()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn read(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

#[test]
fn exported_entry_validates() {
    let dir = TempDir::new().unwrap();
    let p = export(&dir, "doihopf-kC2", "Q");
    let o = entwine(&["validate", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("valid"));
}

#[test]
fn broken_counit_is_reported_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let mut v = read(&export(&dir, "GL2", "Q"));
    v["coalgebra"]["counit"][1] = Value::from("2");
    let p = write(&dir, "broken.json", &v);
    let o = entwine(&["validate", &p]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(
        text.contains("INVALID") && text.contains("counit"),
        "{text}"
    );

    let o = entwine(&["validate", &p, "--format", "json"]);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["valid"], Value::Bool(false));
    let failures = &report["structures"][0]["report"]["failures"];
    assert!(!failures.as_array().unwrap().is_empty());
}

#[test]
fn malformed_scalar_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let mut v = read(&export(&dir, "kC2", "Q"));
    v["algebra"]["unit"][0] = Value::from("1/0");
    let p = write(&dir, "bad.json", &v);
    let o = entwine(&["validate", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("algebra.unit[0]"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = entwine(&["validate", "/nonexistent/structure.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn doi_hopf_over_f2_is_not_g_separable() {
    let dir = TempDir::new().unwrap();
    let p = export(&dir, "doihopf-kC2", "F2");
    let o = entwine(&["analyze", &p, "--question", "G-sep", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["verdict"], "no");
    assert_eq!(report["field"], "F2");
}

#[test]
fn matrix_extension_is_frobenius_with_checked_witness() {
    let dir = TempDir::new().unwrap();
    let p = export(&dir, "ext-k-M2", "Q");
    let o = entwine(&["analyze", &p, "--question", "ext-frob", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["verdict"], "yes");
    let checks = report["checks"].as_object().unwrap();
    assert!(
        !checks.is_empty() && checks.values().all(|c| c == true),
        "{checks:?}"
    );
    assert!(!report["witnesses"].as_object().unwrap().is_empty());
}

#[test]
fn question_needs_matching_structure() {
    let dir = TempDir::new().unwrap();
    let p = export(&dir, "ext-k-M2", "Q");
    let o = entwine(&["analyze", &p, "--question", "FG-frob"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("entwining"), "{}", stderr(&o));
    let o = entwine(&["analyze", &p, "--question", "no-such-question"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let p = export(&dir, "flip-k-DN", "F3");
    let run = || {
        entwine(&[
            "analyze",
            &p,
            "--question",
            "FG-frob",
            "--format",
            "json",
            "--seed",
            "7",
        ])
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<_> = report.as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(report.get("timing_ms").is_none());
}

#[test]
fn list_names_the_corpus() {
    let o = entwine(&["corpus", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 12);
    for name in ["kC2", "M2", "DN", "sweedler", "doihopf-kC2", "ext-k-M2"] {
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().next() == Some(name)),
            "{name}"
        );
    }
}

#[test]
fn corpus_run_passes_and_detects_injected_mutation() {
    let clean = entwine(&["corpus", "run", "--field", "F2"]);
    assert_eq!(clean.status.code(), Some(0), "{}", stdout(&clean));
    let bad = entwine(&["corpus", "run", "--field", "F2", "--inject-mutation", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn unknown_export_name_is_an_input_error() {
    let o = entwine(&["corpus", "export", "no-such-entry"]);
    assert_eq!(o.status.code(), Some(2));
}
