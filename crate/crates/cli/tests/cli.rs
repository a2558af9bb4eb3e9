use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nakajima"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    std::io::Write::write_all(child.stdin.as_mut().unwrap(), input).unwrap();
    child.wait_with_output().unwrap()
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn validate(name: &str, out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{name}: output is not JSON: {e}"));
    let raw = std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&raw).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errs) = compiled.validate(&v) {
        let msgs: Vec<String> = errs.map(|e| format!("{}: {}", e.instance_path, e)).collect();
        panic!("{name} output violates its schema: {msgs:?}");
    }
    v
}

#[test]
fn every_json_output_matches_its_schema() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("mckay", vec!["mckay", "--group", "BI"]),
        ("mckay", vec!["mckay", "--group", "trivial"]),
        ("decompose", vec!["decompose", "--group", "cyclic:2", "--omega", "2,-1"]),
        ("classify", vec!["classify", "--group", "cyclic:3", "--v", "1,0,2", "--w", "1,0,0"]),
        ("quiver_data", vec!["sample", "--kind", "cycle", "--group", "cyclic:3", "--seed", "4"]),
        ("quiver_data", vec!["sample", "--kind", "random", "--group", "cyclic:2", "--v", "1,2", "--w", "1,0"]),
        ("monad", vec!["monad", "--from", "cm", "--k", "2", "--N", "5"]),
        ("koszul", vec!["koszul", "--group", "cyclic:2", "--tau", "1,-1", "--degree", "4"]),
        ("hilbert", vec!["hilbert", "--group", "BD:2", "--N", "2", "--format", "json"]),
        ("cohomology", vec!["cohomology", "--group", "BT"]),
    ];
    for (schema, args) in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        validate(schema, &out);
    }
    let sample = run(&["sample", "--kind", "cm", "--k", "2", "--tau", "1"]);
    let out = run_stdin(&["verify"], &sample.stdout);
    let v = validate("verify", &out);
    assert_eq!(v["residual_zero"], true);
    assert_eq!(v["stable"]["holds"], true);
    assert_eq!(v["costable"]["holds"], true);
}

#[test]
fn config_file_schema_and_merge() {
    let raw = std::fs::read_to_string(schema_dir().join("config.schema.json")).unwrap();
    let schema = jsonschema::JSONSchema::compile(&serde_json::from_str(&raw).unwrap()).unwrap();
    let cfg = serde_json::json!({"group": "cyclic:2", "tau": ["1", "-1"], "N": 3});
    assert!(schema.is_valid(&cfg));
    assert!(!schema.is_valid(&serde_json::json!({"grop": "x"})));
    let path = std::env::temp_dir().join("nakajima-cli-config.json");
    std::fs::write(&path, cfg.to_string()).unwrap();
    let p = path.to_string_lossy().into_owned();
    let out = run(&["koszul", "--config", &p, "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 4);
    assert_eq!(v["tau"], serde_json::json!(["1", "-1"]));
}

#[test]
fn documented_examples() {
    let v: Value = serde_json::from_slice(&run(&["mckay", "--group", "cyclic:4"]).stdout).unwrap();
    assert_eq!(v["delta"], serde_json::json!([1, 1, 1, 1]));
    let v: Value = serde_json::from_slice(&run(&["mckay", "--group", "trivial"]).stdout).unwrap();
    assert_eq!(v["cartan"], serde_json::json!([[0]]));

    let v: Value = serde_json::from_slice(&run(&["koszul", "--group", "cyclic:2", "--tau", "1,-1", "--degree", "5"]).stdout).unwrap();
    assert!(v["degrees"].as_array().unwrap().iter().all(|d| d["exact"] == true));

    let out = run(&["monad", "--from", "cm", "--k", "2", "--N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["h_at_minus1"], -2);
    assert_eq!(v["framing_ok"], true);
}

#[test]
fn exit_codes() {
    let out = run(&["decompose", "--group", "cyclic:2", "--omega", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim"));
    assert_eq!(run(&["mckay", "--group", "cyclic:0"]).status.code(), Some(2));
    assert_eq!(run(&["koszul", "--group", "cyclic:2", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mckay", "--format", "tsv"]).status.code(), Some(2));

    let bad = br#"{"group":"trivial","v":[1],"w":[1],"tau":["1"],"arrows":[{"out":0,"inn":0,"b":{"rows":1,"cols":1,"entries":[["x"]]},"b_star":{"rows":1,"cols":1,"entries":[["0"]]}}],"i":[],"j":[]}"#;
    let out = run_stdin(&["verify"], bad);
    assert_eq!(out.status.code(), Some(2));
    let missing = br#"{"group":"trivial","v":[1],"w":[1],"tau":["1"],"arrows":[{"out":0,"inn":0,"b":{"rows":1,"cols":1}}]}"#;
    let out = run_stdin(&["verify"], missing);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("arrows[0].b"), "{}", String::from_utf8_lossy(&out.stderr));

    // random data off the moment map: certificates fail with exit 1
    let sample = run(&["sample", "--kind", "random", "--group", "cyclic:2", "--v", "1,1", "--w", "1,0", "--seed", "3"]);
    assert_eq!(run_stdin(&["verify"], &sample.stdout).status.code(), Some(1));
    assert_eq!(run_stdin(&["monad", "--N", "3"], &sample.stdout).status.code(), Some(1));
}

#[test]
fn tsv_outputs() {
    let out = run(&["hilbert", "--group", "cyclic:2", "--N", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree\tdim\texpected\tmatches\tblocks");
    assert_eq!(lines.len(), 5);
    assert!(lines[3].starts_with("2\t12\t12\ttrue"));
    let out = run(&["cohomology", "--group", "cyclic:3", "--format", "tsv", "--min", "-3", "--max", "-3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "twist\th0\th1\th2\teuler\n-3\t0,0,0\t0,0,0\t1,1,1\t3\n");
}
