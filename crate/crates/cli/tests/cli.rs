use std::process::{Command, Output};

use chevalley_cli::schema::{report_schema, validate};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevalley")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn order_of_a2_over_f2() {
    let (code, v) = json(&["order", "--type", "A2", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], "168");
    assert_eq!(v["result"]["enumerated"], "168");
    assert_eq!(v["ok"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "jacobi", "--type", "G2"]).status.code(), Some(0));
    let (code, v) = json(&["check", "simplicity", "--type", "B2", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["simple"], false);
    assert_eq!(v["result"]["exceptional"], true);
    assert_eq!(run(&["order", "--type", "A2", "--q", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["order", "--type", "Q7", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["order", "--type", "A2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--type", "A3", "--q", "3"]).status.code(), Some(2));
    assert_eq!(run(&["check", "hall", "--type", "B2"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--seed", "7", "bruhat", "--type", "G2", "--q", "5", "--word", "E:-α1:2,n:α2,E:α1:3,h:α1:4"],
        vec!["--seed", "3", "check", "steinberg", "--type", "B2", "--q", "7"],
        vec!["--format", "json", "--seed", "11", "commutator", "--type", "G2", "--x", "α1", "--y", "α2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_command_matches_schema() {
    let schema = report_schema();
    let cases: [&[&str]; 14] = [
        &["order", "--type", "A2", "--q", "2"],
        &["order", "--type", "E8", "--q", "2"],
        &["enumerate", "--type", "B2", "--q", "2"],
        &["bruhat", "--type", "G2", "--q", "5", "--word", "E:-α1:2,n:α2,E:α1:3"],
        &["bruhat", "--type", "A2", "--word", "E:-α1:1/2,n:α2"],
        &["commutator", "--type", "G2", "--x", "α1", "--y", "α2"],
        &["commutator", "--type", "B2", "--x", "α1", "--y", "α2", "--q", "5"],
        &["constants", "--type", "D4", "--scheme", "extraspecial"],
        &["check", "jacobi", "--type", "F4"],
        &["check", "steinberg", "--type", "A2", "--q", "7"],
        &["check", "steinberg", "--type", "A2"],
        &["check", "poincare", "--type", "E6", "--q", "3"],
        &["check", "hall", "--type", "A3"],
        &["check", "simplicity", "--type", "A2", "--q", "2"],
    ];
    for args in cases {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        let errs = validate(&schema, &v);
        assert!(errs.is_empty(), "{args:?}: {errs:?}");
    }
}

#[test]
fn schema_rejects_tampered_report() {
    let schema = report_schema();
    let (_, mut v) = json(&["order", "--type", "A2", "--q", "2"]);
    v["result"]["order"] = Value::from(168);
    assert!(!validate(&schema, &v).is_empty());
    let (_, mut v) = json(&["check", "poincare", "--type", "A2"]);
    v["extra"] = Value::Bool(true);
    assert!(!validate(&schema, &v).is_empty());
}

#[test]
fn validate_subcommand() {
    let out = run(&["--format", "json", "check", "hall", "--type", "A2"]);
    let path = std::env::temp_dir().join(format!("chevalley-report-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let v = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    std::fs::write(&path, b"{\"command\": \"order\"}").unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();
}
