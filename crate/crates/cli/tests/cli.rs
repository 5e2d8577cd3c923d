use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const FIXTURE: &str = r#"{"variables":["x","y"],"weights":[1,1],"phi":"x*y","f":"x^3+y^3","g":"2*x^3+5*y^3"}"#;
const NEGATIVE: &str = r#"{"variables":["x","y"],"weights":[1,1],"phi":"x*y","f":"x^3+y^3","g":"x^3+y^3+x^2*y"}"#;
const TRANSPORT: &str = r#"{"variables":["x","y"],"weights":[1,1],"phi":"x*y","f":"x^3+y^3","g":"8*x^3+y^3","subst":["1/2*x","y"]}"#;
const CUSP: &str = r#"{"variables":["x","y","z"],"weights":[2,2,3],"phi":"x^2*y+z^2","f":"x^2*y+z^2"}"#;

struct Run {
    code: i32,
    json: Option<Value>,
    stderr: String,
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn validate(name: &str, doc: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name} report violates its schema: {msgs:?}\n{doc:#}");
}

fn run(problem: Option<&str>, args: &[&str]) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rvequiv"));
    if let Some(p) = problem {
        let path = dir.path().join("problem.json");
        std::fs::write(&path, p).unwrap();
        validate("problem", &serde_json::from_str(p).unwrap());
        cmd.arg("--problem").arg(path);
    }
    let out = cmd.args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json: Option<Value> = (!stdout.trim().is_empty()).then(|| serde_json::from_str(&stdout).unwrap());
    if let Some(doc) = &json {
        validate(doc["command"].as_str().unwrap(), doc);
    }
    Run {
        code: out.status.code().unwrap(),
        json,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(problem: Option<&str>, args: &[&str], code: i32) -> Value {
    let r = run(problem, args);
    assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
    let doc = r.json.expect("a report");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert!(doc.get("seed").is_some() && doc.get("truncation").is_some());
    doc
}

#[test]
fn decide_fixture_is_equivalent() {
    let doc = ok(Some(FIXTURE), &["decide"], 0);
    assert_eq!(doc["result"]["status"], "EQUIVALENT");
    assert_eq!(doc["result"]["reason"], "direct_pencil");
    assert_eq!(doc["truncation"], "8");
}

#[test]
fn decide_negative_fixture_is_unknown() {
    let doc = ok(Some(NEGATIVE), &["decide"], 2);
    assert_eq!(doc["result"]["status"], "UNKNOWN");
    let doc = ok(Some(NEGATIVE), &["--seed", "9", "decide", "--search", "--draws", "10"], 2);
    assert_eq!(doc["seed"], 9);
    assert_eq!(doc["result"]["draws_tried"], 10);
}

#[test]
fn decide_refutes_by_fingerprint() {
    let p = r#"{"variables":["x","y"],"weights":[1,1],"phi":"x*y","f":"x^3+y^3","g":"x^2*y"}"#;
    let doc = ok(Some(p), &["decide"], 1);
    assert_eq!(doc["result"]["status"], "NOT_EQUIVALENT");
}

#[test]
fn decide_with_transport_carries_both_certificates() {
    let doc = ok(Some(TRANSPORT), &["decide"], 0);
    let r = &doc["result"];
    assert_eq!(r["reason"], "transport_pencil");
    assert_eq!(r["substitution"], serde_json::json!(["1/2*x", "y"]));
    assert_eq!(r["pencil"]["verdict"], "EQUIVALENT");
    assert_eq!(r["transported"], "x^3 + y^3");
}

#[test]
fn cusp_commands() {
    let doc = ok(Some(CUSP), &["lie0"], 0);
    assert_eq!(doc["result"]["dimension"], 5);
    let doc = ok(Some(CUSP), &["check-qh"], 0);
    assert_eq!(doc["result"]["degree"], "6");
    let doc = ok(Some(CUSP), &["infer-weights"], 0);
    assert_eq!(doc["result"]["weights"], serde_json::json!([1, 2, 2]));
    assert_eq!(doc["result"]["degree"], "4");
    ok(Some(CUSP), &["theta", "--degree", "0"], 0);
}

#[test]
fn check_qh_negative() {
    let p = r#"{"variables":["x","y"],"weights":[1,1],"f":"x^2 + y^3"}"#;
    let doc = ok(Some(p), &["check-qh"], 1);
    assert_eq!(doc["result"]["quasihomogeneous"], false);
}

#[test]
fn fingerprint_and_ideal_commands() {
    let doc = ok(Some(FIXTURE), &["fingerprint", "--max-degree", "5"], 0);
    assert_eq!(doc["result"]["dims"], serde_json::json!([1, 2, 3, 2, 1, 0]));
    ok(Some(FIXTURE), &["ideal-equal"], 0);
    let doc = ok(Some(NEGATIVE), &["ideal-equal"], 1);
    assert_eq!(doc["result"]["witness"], "3");
}

#[test]
fn pencil_command() {
    let doc = ok(Some(FIXTURE), &["pencil"], 0);
    assert_eq!(doc["result"]["rational_roots"], serde_json::json!(["-1", "-1/4"]));
    ok(Some(NEGATIVE), &["pencil"], 1);
}

#[test]
fn transport_and_forward_commands() {
    let doc = ok(Some(TRANSPORT), &["transport"], 0);
    assert_eq!(doc["result"]["holds"], true);
    ok(Some(NEGATIVE), &["transport", "--subst", "x,y"], 1);
    let doc = ok(Some(FIXTURE), &["forward", "--subst", "y,x"], 0);
    assert_eq!(doc["result"]["image"], "x^3 + y^3");
    let r = run(Some(FIXTURE), &["forward", "--subst", "x+y,y"]);
    assert_eq!(r.code, 65, "{}", r.stderr);
    assert!(r.json.is_none() && !r.stderr.is_empty());
    let r = run(Some(FIXTURE), &["transport", "--subst", "x,x"]);
    assert_eq!(r.code, 65);
}

#[test]
fn saito_command() {
    let p = r#"{"variables":["x","y"],"f":"x^5+y^5+x^3*y^3"}"#;
    let doc = ok(Some(p), &["saito-membership"], 1);
    assert_eq!(doc["result"]["is_member"], false);
    ok(Some(FIXTURE), &["saito-membership"], 0);
}

#[test]
fn crosscheck_command_is_seeded() {
    let a = ok(None, &["crosscheck", "--instances", "3", "--seed", "5", "--max-degree", "6"], 0);
    let b = ok(None, &["--seed", "5", "crosscheck", "--instances", "3", "--max-degree", "6"], 0);
    assert_eq!(a, b);
    assert_eq!(a["result"]["all_agree"], true);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(None, &["bogus"]).code, 64);
    assert_eq!(run(None, &["theta"]).code, 64);
    assert_eq!(run(None, &["lie0"]).code, 64);
    assert_eq!(run(Some(FIXTURE), &["decide", "--search", "--draws", "0"]).code, 64);
    assert_eq!(run(Some(FIXTURE), &["fingerprint", "--max-degree", "-1"]).code, 64);
    let r = run(Some(r#"{"variables":["x"],"f":"x^"}"#), &["check-qh"]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("1:3"), "{}", r.stderr);
    let out = Command::new(env!("CARGO_BIN_EXE_rvequiv"))
        .args(["--problem", "/nonexistent/problem.json", "lie0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(66));
}
