use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_codeloop"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name)
}

fn assert_valid(schema: &str, instance: &Value) {
    let text = std::fs::read_to_string(schema_path(schema)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{instance}");
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let o = run(args);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn degree_subcommand() {
    let o = run(&["degree", "--field", "3^2", "x1^3*x2^7 + x1*x2*x3^5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("p-weight 4") && out.contains("p-weight 5"), "{out}");
    assert!(out.ends_with("cdeg: 5\n"));
    assert!(stdout(&run(&["degree", "--field", "2", "0"])).ends_with("cdeg: 0\n"));
    assert!(stdout(&run(&["degree", "--field", "2", "1 + x1"])).ends_with("cdeg: infinity\n"));

    let (code, v) = json_of(&["degree", "--field", "3^2", "--oracle", "--json", "x1*x2^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["cdeg"], 3);
    assert_eq!(v["oracle_cdeg"], 3);
    assert_valid("degree.schema.json", &v);
    let (_, v) = json_of(&["degree", "--json", "1 + x1"]);
    assert_eq!(v["cdeg"], "infinity");
    assert_valid("degree.schema.json", &v);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = run(&["degree", "--field", "3", "x1 + 5*x2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 5"), "{err}");
    assert_eq!(run(&["degree", "--field", "9", "x1"]).status.code(), Some(2));
    assert_eq!(run(&["build-code"]).status.code(), Some(2));
    assert_eq!(run(&["build-code", "--preset", "nope"]).status.code(), Some(2));
}

#[test]
fn polarize_subcommand() {
    let o = run(&["polarize", "--field", "3", "x1^2", "--at", "1", "--at", "1"]);
    assert_eq!(stdout(&o), "2\n");
    let o = run(&["polarize", "--field", "2", "x1*x2", "--at", "1,0", "--at", "0,1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["polarize", "--field", "2", "x1*x2", "--at", "1,0", "--at", "0,1", "--at", "1,1"]);
    assert_eq!(stdout(&o), "0\n");
    let (_, v) = json_of(&["polarize", "--field", "2", "x1", "--s", "2", "--json"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(v.as_array().unwrap().iter().all(|x| x == 0));
    assert_eq!(run(&["polarize", "--field", "3", "x1", "--at", "1,2"]).status.code(), Some(2));
}

#[test]
fn interpolate_and_anf() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.json");
    std::fs::write(&table, r#"{"field":"3","n":1,"table":[0,1,1]}"#).unwrap();
    assert_eq!(stdout(&run(&["interpolate", table.to_str().unwrap()])), "x1^2\n");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_valid("value_table.schema.json", &v);

    let o = run(&["degree", "--field", "3", "--table", table.to_str().unwrap()]);
    assert!(stdout(&o).ends_with("cdeg: 2\n"));

    let o = run(&["anf", "x2 + x1*x3 + x1*x2*x3"]);
    assert_eq!(stdout(&o), "{{1,2},{2,3},{1,2,3}}\n");
    let o = run(&["anf", "--from-family", "1,2;2,3;1,2,3"]);
    assert_eq!(stdout(&o), "x2 + x1*x3 + x1*x2*x3\n");
}

#[test]
fn preset_build_is_bit_exact() {
    let o = run(&["build-code", "--preset", "paper-example"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains(
        "generator:\n1000111,0000000,1000111\n0101011,1000111,0101011\n0000000,0101011,0011101\n"
    ));
    assert!(out.contains("level: 2\nlength: 21\ndim: 3\nverification: ok\n"));
    let (code, v) = json_of(&["build-code", "--preset", "paper-example", "--json"]);
    assert_eq!(code, 0);
    assert_valid("build_code.schema.json", &v);
    assert_eq!(v["report"]["level"], 2);
    assert_eq!(v["report"]["length"], 21);
}

#[test]
fn tampered_matrix_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    std::fs::write(&path, "1000111,0000000,1000111\n0101011,1000111,0101011\n0000000,0101011,0011101\n").unwrap();
    let p = path.to_str().unwrap();
    assert!(run(&["build-code", "--preset", "paper-example", "--check", p]).status.success());
    std::fs::write(&path, "1000111,0000000,1000111\n0101011,1000111,0101011\n0000000,0101011,0011100\n").unwrap();
    let o = run(&["build-code", "--preset", "paper-example", "--check", p, "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("build_code.schema.json", &v);
    assert!(!v["report"]["violations"].as_array().unwrap().is_empty());

    let o = run(&["verify", "--code", p, "x2 + x1*x3 + x1*x2*x3", "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid("build_report.schema.json", &v);
}

#[test]
fn random_build_reports_level() {
    let args = ["build-code", "--random", "--vars", "4", "--degree", "3", "--seed", "11", "--json"];
    let (code, v) = json_of(&args);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["level"], 2);
    assert_eq!(v["r"], 2);
    assert_valid("build_code.schema.json", &v);
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let other = ["build-code", "--random", "--vars", "4", "--degree", "3", "--seed", "12", "--json"];
    assert_ne!(stdout(&run(&args)), stdout(&run(&other)));
}

#[test]
fn level_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    std::fs::write(&path, "# a doubly even code\n11110000\n00001111\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&run(&["level", p])), "2\n");
    let (_, v) = json_of(&["level", p, "--json"]);
    assert_valid("level.schema.json", &v);
    std::fs::write(&path, "0000\n").unwrap();
    assert_eq!(run(&["level", p]).status.code(), Some(2));
}

#[test]
fn build_loop_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |path: &Path| {
        vec![
            "build-loop".to_string(),
            "--preset".into(),
            "paper-example".into(),
            "--export-cayley".into(),
            path.to_str().unwrap().into(),
            "--json".into(),
        ]
    };
    let o1 = bin().args(args(&a)).output().unwrap();
    let o2 = bin().args(args(&b)).output().unwrap();
    assert!(o1.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(o1.stdout, o2.stdout);
    let v: Value = serde_json::from_str(&stdout(&o1)).unwrap();
    assert_valid("build_loop.schema.json", &v);
    assert_eq!(v["order"], 16);
    assert_eq!(v["roundtrip"], true);
    assert_eq!(v["report"]["moufang"], true);
    let export: Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_valid("loop_export.schema.json", &export);
    assert_eq!(export["cayley"].as_array().unwrap().len(), 16);

    let (code, v) = json_of(&["build-loop", "0", "--vars", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 2);
    assert_eq!(v["report"]["elementary_abelian"], true);

    let code_file = dir.path().join("c.txt");
    std::fs::write(&code_file, "1111\n").unwrap();
    let (code, v) = json_of(&["build-loop", "--code", code_file.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 4);
    assert_eq!(v["report"]["squares"].as_array().unwrap().len(), 2);

    std::fs::write(&code_file, "1100\n").unwrap();
    assert_eq!(run(&["build-loop", "--code", code_file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn demo_runs() {
    let o = run(&["demo-paper-example"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("cdeg(x1^3*x2^7 + x1*x2*x3^5) = 5"));
    assert!(out.contains("pi(x) = (1101100,1101100,1110001), w = 12"));
    assert!(out.ends_with("all checks passed\n"));
    let (code, v) = json_of(&["demo-paper-example", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree_example"]["cdeg"], 5);
    assert_valid("build_code.schema.json", &v["code_example"]);
}
