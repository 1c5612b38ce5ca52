use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul-transfer")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn build_prints_ranks_and_differential() {
    let out = run(&["build", "--n", "2", "--a", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["resolution"]["ranks"], serde_json::json!([1, 3, 2]));
    let entries = &doc["resolution"]["differential"]["blocks"][1]["entries"];
    let values: Vec<&str> = entries.as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["-x1^2", "-x1*x2", "-x2^2"]);
}

#[test]
fn multiply_in_degree_one() {
    let out = run(&["multiply", "--n", "2", "--a", "2", "--alpha", "-e[1]*y^[1,1] + e[2]*y^[2,0]", "--beta", "x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["product"], "x1*b1");
}

#[test]
fn compare_same_level_is_identity() {
    let out = run(&["compare", "--n", "2", "--a", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    for block in doc["maps"][0]["map"]["blocks"].as_array().unwrap() {
        for e in block["entries"].as_array().unwrap() {
            assert_eq!(e["row"], e["col"]);
            assert_eq!(e["value"], "1");
        }
    }
}

#[test]
fn verify_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--n", "2", "--a", "1", "--suite", "resolution", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suite"], "resolution");
}

#[test]
fn exit_codes() {
    // inadmissible and unsupported characteristics
    assert_eq!(run(&["build", "--n", "2", "--a", "2", "--char", "3"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--n", "2", "--a", "2", "--char", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "2", "--a", "2", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "2", "--a", "2", "--b", "3", "--c", "2"]).status.code(), Some(2));
    // malformed or out-of-range elements
    assert_eq!(run(&["multiply", "--n", "2", "--a", "2", "--alpha", "e[", "--beta", "1"]).status.code(), Some(4));
    assert_eq!(run(&["multiply", "--n", "2", "--a", "2", "--alpha", "y^[1,0]", "--beta", "1"]).status.code(), Some(4));
    let err = run(&["build", "--n", "2", "--a", "2", "--char", "3"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("characteristic"));
}
