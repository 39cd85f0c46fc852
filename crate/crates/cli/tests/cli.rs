use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    report: Value,
}

fn cuh(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cuh"));
    cmd.args(args).env_remove("FF_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().expect("exit code"), stdout, report }
}

fn assert_valid(report: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{report:#}");
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_lists_twelve_families() {
    let r = cuh(&["catalog", "--format", "json"], &[]);
    assert_eq!(r.code, 0);
    assert_valid(&r.report);
    let patterns = r.report["result"]["patterns"].as_array().unwrap();
    assert_eq!(patterns.len(), 12);
    let d = patterns.iter().find(|p| p["name"] == "D").unwrap();
    assert_eq!((d["vertices"].as_u64(), d["edges"].as_u64()), (Some(4), Some(5)));
}

#[test]
fn matching_is_classified() {
    let f = data("matching.txt");
    let r = cuh(&["classify", "--in", path(&f)], &[]);
    assert_eq!(r.code, 0);
    assert_valid(&r.report);
    assert_eq!(r.report["result"]["label"], "Matching");
    let bytes = std::fs::read(&f).unwrap();
    let want = {
        use sha2::Digest;
        hex::encode(sha2::Sha256::digest(&bytes))
    };
    assert_eq!(r.report["inputs"][0]["sha256"], want.as_str());
}

#[test]
fn red_path_is_not_ultrahomogeneous() {
    let r = cuh(&["uh-check", "--graph", path(&data("red_p4.txt"))], &[]);
    assert_eq!(r.code, 0);
    assert_valid(&r.report);
    assert_eq!(r.report["result"]["ultrahomogeneous"], false);
    // one-step extensions exist from single vertices but not from pairs
    let r = cuh(&["uh-check", "--graph", path(&data("red_p4.txt")), "--k", "1"], &[]);
    assert_eq!(r.report["result"]["k_homogeneous"], true);
    let r = cuh(&["uh-check", "--graph", path(&data("red_p4.txt")), "--k", "2"], &[]);
    assert_eq!(r.report["result"]["k_homogeneous"], false);
}

#[test]
fn malformed_input_exits_one_with_line() {
    let r = cuh(&["omitted", "--graph", path(&data("bad_vertex.txt"))], &[]);
    assert_eq!(r.code, 1);
    assert_valid(&r.report);
    assert!(r.report["error"].as_str().unwrap().contains("line 3"));
    let r = cuh(&["uh-check", "--graph", "/nonexistent/graph.txt"], &[]);
    assert_eq!(r.code, 1);
    assert_valid(&r.report);
}

#[test]
fn build_then_classify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f21.json");
    let text = dir.path().join("f21.txt");
    let r = cuh(&["build", "--family", "F21", "--out", path(&out), "--graph-out", path(&text)], &[]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_valid(&r.report);
    assert!(r.report["result"]["level"].as_u64().unwrap() >= 4);

    let ev = dir.path().join("evidence.json");
    let r = cuh(&["classify", "--in", path(&out), "--evidence", path(&ev)], &[]);
    assert_eq!(r.code, 0);
    assert_valid(&r.report);
    assert_eq!(r.report["result"]["label"], "F21");
    let evidence: Value = serde_json::from_str(&std::fs::read_to_string(&ev).unwrap()).unwrap();
    assert_eq!(evidence["profile"]["omega_red"], 2);

    let r = cuh(&["omitted", "--graph", path(&text), "--bound", "3"], &[]);
    assert_eq!(r.code, 0);
    let mut names: Vec<String> =
        r.report["result"]["names"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    names.sort();
    assert_eq!(names, ["K:blue:2", "K:red:3", "P3_red", "Tr", "Tr~"]);
}

#[test]
fn exhausted_build_is_indeterminate() {
    let r = cuh(&["build", "--family", "G(3,3)", "--budget", "10"], &[]);
    assert_eq!(r.code, 2);
    assert_valid(&r.report);
    assert_eq!(r.report["result"]["exhausted"], true);
}

#[test]
fn bare_graph_at_low_level_is_indeterminate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f21.txt");
    let r = cuh(&["build", "--family", "F21", "--graph-out", path(&out)], &[]);
    assert_eq!(r.code, 0);
    let r = cuh(&["classify", "--in", path(&out), "--level", "2"], &[]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert_valid(&r.report);
    assert_eq!(r.report["result"]["verdict"]["verdict"], "unclassifiable_at_level");
}

#[test]
fn reports_are_byte_identical_and_seed_env_wins() {
    let args = ["build", "--family", "F21", "--level", "3", "--seed", "5"];
    let a = cuh(&args, &[]);
    let b = cuh(&args, &[]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.report["config"]["effective_seed"], 5);
    let c = cuh(&args, &[("FF_SEED", "9")]);
    assert_eq!(c.report["config"]["effective_seed"], 9);
    assert_eq!(c.report["result"]["approximant"]["seed"], 9);
    let bad = cuh(&args, &[("FF_SEED", "x")]);
    assert_eq!(bad.code, 1);
    assert_valid(&bad.report);
}

#[test]
fn amalgam_check_with_spec_file() {
    let r = cuh(&["amalgam-check", "--spec", path(&data("f22.json")), "--max-size", "3", "--jobs", "1"], &[]);
    assert_eq!(r.code, 0);
    assert_valid(&r.report);
    assert_eq!(r.report["result"]["holds"], true);
    assert_eq!(r.report["result"]["check"]["note"], "inconclusive beyond 3");
}

#[test]
fn piecewise_check_and_text_format() {
    let r = cuh(&["piecewise-check", "--graph", path(&data("matching.txt")), "--format", "text"], &[]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("piecewise_ultrahomogeneous: true"), "{}", r.stdout);
}

#[test]
fn report_file_option() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("report.json");
    let r = cuh(&["catalog", "--report", path(&rep)], &[]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_valid(&v);
}
