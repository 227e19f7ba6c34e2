use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const WEYL: &str = "scalars(char = 0)\nbase F = field\nring R = ambiskew(F, id, v = 1, rho = 1)\ncheck simple(R)\n";

fn ambiskew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambiskew")).args(args).output().expect("binary runs")
}

fn spec_file(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".ask").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_prints_json_by_default() {
    let f = spec_file(WEYL);
    let out = ambiskew(&["check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = v["reports"].as_array().expect("reports array");
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["status"], "holds");
}

#[test]
fn check_text_format() {
    let f = spec_file(WEYL);
    let out = ambiskew(&["check", f.path().to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("simple(R)") && text.contains("holds"), "{text}");
}

#[test]
fn fails_is_an_answer_but_inconclusive_is_not() {
    let f = spec_file(&WEYL.replace("char = 0", "char = 5"));
    assert_eq!(ambiskew(&["check", f.path().to_str().unwrap()]).status.code(), Some(0));

    // the unit question for this v is left undecided
    let f = spec_file(
        "scalars(char = 0)\nbase C = quadratic(i, d = -1)\nauto conj on C { i -> -i }\n\
         ring R = ambiskew(C, conj, v = 1 + i, rho = 2)\ncheck units(R)\n",
    );
    let out = ambiskew(&["check", f.path().to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn parse_errors_exit_2_with_location() {
    let f = spec_file(&WEYL.replace("rho = 1", "rho = 0"));
    let path = f.path().to_str().unwrap();
    let out = ambiskew(&["check", path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(&format!("{path}:3:39: semantic error: rho must be nonzero")), "{err}");
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(ambiskew(&["check", "/nonexistent/file.ask"]).status.code(), Some(2));
}

#[test]
fn eval_prints_normal_form() {
    let f = spec_file(WEYL);
    let out = ambiskew(&["eval", f.path().to_str().unwrap(), "--expr", "(x + y)^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1 + y^2 + 2*x*y + x^2");
}

#[test]
fn catalog_list_show_and_run() {
    let out = ambiskew(&["catalog", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let list = stdout(&out);
    assert!(list.contains("weyl") && list.contains("complex_conjugation_grid"), "{list}");

    let out = ambiskew(&["catalog", "weyl"]);
    assert!(stdout(&out).contains("ring R = ambiskew(F, id, v = 1, rho = 1)"));

    let out = ambiskew(&["catalog", "torus", "--run"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = &v["entries"][0]["reports"];
    assert_eq!(v["entries"][0]["name"], "torus");
    let statuses: Vec<_> = reports.as_array().unwrap().iter().map(|r| r["status"].clone()).collect();
    assert_eq!(statuses, vec!["holds", "fails"]);

    assert_ne!(ambiskew(&["catalog", "no_such_entry"]).status.code(), Some(0));
}

#[test]
fn catalog_run_is_deterministic() {
    let a = ambiskew(&["catalog", "--run"]);
    let b = ambiskew(&["catalog", "--run"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_matches_shipped_schema() {
    let schema: Value =
        serde_json::from_str(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/report.schema.json")))
            .unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");

    let catalog: Value = serde_json::from_str(&stdout(&ambiskew(&["catalog", "--run", "--timing"]))).unwrap();
    let f = spec_file(WEYL);
    let single: Value = serde_json::from_str(&stdout(&ambiskew(&["check", f.path().to_str().unwrap()]))).unwrap();
    for doc in [catalog, single] {
        let errors: Vec<String> =
            validator.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{errors:#?}");
    }
}
