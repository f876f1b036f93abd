use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dbl(args: &[&str]) -> Output {
    dbl_env(args, &[])
}

fn dbl_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dbl"));
    cmd.args(args).env_remove("DBL_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("run dbl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Run with `--json`, validate the report against the shipped schema and
/// return it with the exit code.
fn json_run(args: &[&str]) -> (i32, Value) {
    json_run_env(args, &[])
}

fn json_run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = dbl_env(&full, env);
    let report = read_report(&path);
    (code(&out), report)
}

fn read_report(path: &Path) -> Value {
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).expect("report written")).unwrap();
    let schema: Value = serde_json::from_str(dbl_cli::REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
    report
}

#[test]
fn group_info_reports_order_and_fusion() {
    let o = dbl(&["group", "info", "psl2:7"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("order 168") && s.contains("CASE3_PSL"), "{s}");
    let (c, r) = json_run(&["group", "info", "d:8"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["details"]["order"], 8);
    assert_eq!(r["checks"][0]["details"]["fusion"]["label"], "CASE1_NILPOTENT");
}

#[test]
fn unsupported_and_malformed_input_exit_two() {
    let o = dbl(&["group", "info", "psl2:4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported parameter"));
    assert_eq!(code(&dbl(&["group", "info", "qq:3"])), 2);
    assert_eq!(code(&dbl(&["frobnicate"])), 2);
    assert_eq!(code(&dbl(&["gendec", "build", "--case", "g", "--n", "3"])), 2);
    assert_eq!(code(&dbl(&["gendec", "build", "--case", "b", "--n", "4"])), 2);
    assert_eq!(code(&dbl(&["scott", "psl2:7", "--at", "gens"])), 2);
    assert_eq!(code(&dbl(&["transport", "psl2:7"])), 2);
    assert_eq!(code(&dbl_env(&["group", "info", "d:8"], &[("DBL_SEED", "seven")])), 2);
}

#[test]
fn scott_examples() {
    let (c, r) = json_run(&["scott", "psl2:7", "--at", "borel"]);
    assert_eq!(c, 0);
    let d = &r["checks"][0]["details"];
    assert_eq!(d["loewy"], serde_json::json!([["1"], ["3a", "3b"], ["1"]]));
    assert_eq!(d["socle"], d["loewy"]);
    let (c, r) = json_run(&["scott", "pgl2:3", "--at", "borel"]);
    assert_eq!(c, 0);
    let d = &r["checks"][0]["details"];
    assert_eq!(d["dim"], 8);
    assert_eq!(d["loewy"], serde_json::json!([["1"], ["1", "2a"], ["1", "2a"], ["1"]]));
    let (c, r) = json_run(&["scott", "d:8", "--at", "sylow"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["details"]["dim"], 1);
    // An explicit subgroup: the trivial one gives the regular module of S3.
    let (c, r) = json_run(&["scott", "s:3", "--gen", "()"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["details"]["projective"], true);
}

#[test]
fn brauer_examples() {
    let (c, r) = json_run(&["brauer", "psl2:7"]);
    assert_eq!((c, r["status"].as_str()), (0, Some("pass")));
    let (c, r) = json_run(&["brauer", "prod(pgl2:3,pgl2:3)"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["status"], "pass");
    let audit = r["checks"][0]["details"]["audit"].as_array().unwrap();
    assert!(audit.iter().all(|row| row["verdict"] != "decomposable"));
    let (c, r) = json_run(&["brauer", "prod(pgl2:3,psl2:7)"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["status"], "skip");
    assert!(r["checks"][0]["summary"].as_str().unwrap().starts_with("FusionMismatch (CASE2 vs CASE3)"));
}

#[test]
fn transport_examples() {
    let (c, r) = json_run(&["transport", "prod(pgl2:3,pgl2:3)"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["details"]["verdict"], "morita");
    let (c, r) = json_run(&["transport", "prod(pgl2:3,pgl2:5)"]);
    assert_eq!(c, 0);
    let d = &r["checks"][0]["details"];
    assert_eq!(d["verdict"], "stable-only");
    let two = d["images"].as_array().unwrap().iter().find(|i| i["dim"] == 2).unwrap();
    assert_eq!(two["image"]["simple"], false);
    assert_eq!(two["image"]["indecomposable"], true);
    let (c, r) = json_run(&["transport", "prod(psl2:7,psl2:9)"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["status"], "skip");
}

#[test]
fn gendec_build_prints_text_and_json() {
    let o = dbl(&["gendec", "build", "--case", "a", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("a 3 - 4\n"), "{}", stdout(&o));
    let (c, r) = json_run(&["gendec", "build", "--case", "a", "--n", "3"]);
    assert_eq!(c, 0);
    let m = &r["checks"][0]["details"]["matrix"];
    let cols: Vec<&str> = m["columns"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    let s = cols.iter().position(|&l| l == "s").unwrap();
    let column: Vec<&str> = m["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[s].as_str().unwrap())
        .collect();
    assert_eq!(column, ["1", "1", "-1", "-1", "0"]);
}

#[test]
fn gendec_verify_examples() {
    let (c, r) = json_run(&["gendec", "verify", "--case", "b", "--group", "a:7"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["details"]["expected_delta"], Value::Null);
    let (c, r) = json_run(&["gendec", "verify", "--case", "e", "--group", "pgl2:9", "--n", "4"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"][0]["details"]["delta"], serde_json::json!({"delta1": 1, "delta2": -1, "delta3": -1}));
    let (c, _) = json_run(&["gendec", "verify", "--case", "f", "--group", "psl2:7"]);
    assert_eq!(c, 1);
}

#[test]
fn corpus_filters() {
    let (c, r) = json_run(&["corpus", "run", "--filter", "fusion"]);
    assert_eq!(c, 0);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 15);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let (c, r) = json_run(&["corpus", "run", "--filter", "nonexistent-tag"]);
    assert_eq!(c, 0);
    assert_eq!(r["checks"].as_array().unwrap().len(), 0);
}

#[test]
fn custom_corpus_errors_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "x d:8 CASE1\n").unwrap();
    assert_eq!(code(&dbl(&["--corpus", bad.to_str().unwrap(), "corpus", "run"])), 2);
    let wrong = dir.path().join("wrong.txt");
    std::fs::write(&wrong, "x pgl2:5 CASE3 e 3\n").unwrap();
    let (c, r) = json_run(&["--corpus", wrong.to_str().unwrap(), "corpus", "run", "--filter", "fusion"]);
    assert_eq!(c, 1);
    assert_eq!(r["status"], "fail");
    assert_eq!(code(&dbl(&["--corpus", "/nonexistent/corpus.txt", "corpus", "run"])), 2);
}

#[test]
fn reports_are_byte_deterministic_and_echo_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = dbl(&["corpus", "run", "--filter", "pgl2", "--json", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // The echoed command differs only in the output path.
    let norm = |t: &[u8], p: &Path| String::from_utf8_lossy(t).replace(p.to_str().unwrap(), "OUT");
    assert_eq!(norm(&ta, &a), norm(&tb, &b));
    let (_, r) = json_run_env(&["group", "info", "d:8"], &[("DBL_SEED", "0x10")]);
    assert_eq!(r["seed"], 16);
    let (_, r) = json_run(&["group", "info", "d:8"]);
    assert_eq!(r["seed"], dbl_core::config::DEFAULT_SEED);
}

#[test]
fn timing_is_opt_in() {
    let (_, r) = json_run(&["group", "info", "d:8"]);
    assert!(r["checks"][0].get("timing_ms").is_none());
    let (_, r) = json_run(&["--timing", "group", "info", "d:8"]);
    assert!(r["checks"][0]["timing_ms"].is_u64());
}
