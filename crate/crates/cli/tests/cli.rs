use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qls")).args(args).output().expect("qls runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn schema_lists_every_key() {
    let o = qls(&["schema"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in ["name", "orders", "g", "chi", "lambda_diag", "lambda_off", "oracle_level", "max_dim"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(key)), "{key} missing");
    }
}

#[test]
fn analyze_sweedler_text() {
    let o = qls(&["analyze", &fixture("sweedler.toml"), "--oracle-level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("instance: sweedler"));
    assert!(text.contains("dim H = 4"));
    assert!(text.contains("ord rho = 2, ord S^2 = 2"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn analyze_sweedler_json() {
    let o = qls(&["analyze", &fixture("sweedler.toml"), "--format", "json", "--s2-grading"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["alpha_on_generators"][0]["value"], "-1");
    let verdict = |name: &str| {
        v["verdicts"].as_array().unwrap().iter().find(|x| x["name"] == name).unwrap().clone()
    };
    assert_eq!(verdict("strongly graded")["closed_form"], true);
    assert_eq!(verdict("unimodular")["closed_form"], false);
    assert_eq!(v["rho_grading"]["components"].as_array().unwrap().len(), 2);
    assert!(v["s2_grading"].is_object());
    for entry in v["oracles"].as_array().unwrap() {
        assert_ne!(entry["status"], "fail", "{entry}");
    }
}

#[test]
fn level_zero_skips_oracles() {
    let o = qls(&["analyze", &fixture("sweedler.toml"), "--oracle-level", "0", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let skipped = v["oracles"].as_array().unwrap().iter().filter(|e| e["status"] == "skipped").count();
    assert!(skipped > 5);
}

#[test]
fn invalid_datum_exits_1() {
    let o = qls(&["analyze", &fixture("trivial_character.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q_11 = 1"));
}

#[test]
fn syntax_error_exits_1() {
    let o = qls(&["analyze", &fixture("syntax_error.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn missing_file_exits_1() {
    let o = qls(&["analyze", "/nonexistent/instance.toml"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn noncentral_correction_is_reported_as_a_failure() {
    // g^2 anticommutes with both generators here, so lambda_12 g^2 is not central
    let o = qls(&["analyze", &fixture("z4_two_generator.toml"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v["oracles"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "fail")
        .map(|e| e["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["integral lemma (1): lambda_ji g_i g_j is central"]);
    let entry = |check: &str| v["oracles"].as_array().unwrap().iter().find(|e| e["check"] == check).unwrap()["status"].clone();
    assert_eq!(entry("right integrals t_sigma"), "pass");
    assert_eq!(entry("Hopf axiom: associativity"), "pass");
}

#[test]
fn corpus_run() {
    let o = qls(&["corpus", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let instances = v["instances"].as_array().unwrap();
    assert!(instances.len() >= 17);
    assert!(instances.iter().all(|i| i["outcome"] == "analyzed"));
    let mut failures = vec![];
    for i in instances {
        for e in i["oracles"].as_array().unwrap() {
            if e["status"] == "fail" {
                failures.push(format!("{}: {}", i["name"].as_str().unwrap(), e["check"].as_str().unwrap()));
            }
        }
        for verdict in i["verdicts"].as_array().unwrap() {
            assert_ne!(verdict["agreement"], "disagree", "{}", i["name"]);
        }
    }
    assert_eq!(failures, ["z4-two-generator: integral lemma (1): lambda_ji g_i g_j is central"]);
    assert_eq!(o.status.code(), Some(2));

    let text = stdout(&qls(&["corpus"]));
    assert!(text.contains("exterior-z2-n5"));
}
