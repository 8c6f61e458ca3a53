use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const CUBIC_THREEFOLD: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - x0*x1*x4";

fn hodgekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgekit")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = hodgekit(&all);
    (code(&o), serde_json::from_slice(&o.stdout).expect("valid JSON on stdout"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(name)
}

fn validate(doc: &Value) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(data("schema/report.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn singular_input_exits_2() {
    assert_eq!(code(&hodgekit(&["jring", "--poly", "x0^3", "--degree", "2"])), 2);
    let (c, doc) = json(&["hodge", "--poly", "x0^3 + x1^3 + x2^3 + x2^2*x3"]);
    assert_eq!(c, 2);
    assert_eq!(doc["error"]["kind"], "singular");
    validate(&doc);
}

#[test]
fn parse_and_usage_errors_exit_3() {
    assert_eq!(code(&hodgekit(&["jring", "--poly", "x0^3 + * x1"])), 3);
    assert_eq!(code(&hodgekit(&["jring", "--poly", "x0^3 + x1^2 + x2^3"])), 3);
    assert_eq!(code(&hodgekit(&["jring"])), 3);
    let (c, doc) = json(&["twisted", "--poly", "x0^3 + y"]);
    assert_eq!(c, 3);
    assert_eq!(doc["error"]["kind"], "parse");
    validate(&doc);
}

#[test]
fn twisted_single_cell() {
    let o = hodgekit(&["twisted", "--poly", "fermat-cubic-7", "--p", "4", "--k", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("h^q(Omega^4(3)) = {q=1: 21}"), "{}", stdout(&o));
}

#[test]
fn paper_check_scoreboard() {
    let o = hodgekit(&["paper-check", "--pair", "fermat-cubic-7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[pass]")).count(), 5);
    let notes: Vec<&str> = text.lines().filter(|l| l.starts_with("note:")).collect();
    assert_eq!(notes.len(), 1);
    assert!(notes[0].contains("h_6^{3,3}: claimed 21, derived 20"));

    let table = data("data/claimed-cubic-pair.json");
    let (c, doc) = json(&["paper-check", "--paper-table", table.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(doc["result"]["all_passed"], true);
    validate(&doc);
}

#[test]
fn extra_audit_findings_exit_4() {
    let dir = std::env::temp_dir().join(format!("hodgekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("claims.json");
    std::fs::write(&path, r#"{"dim_total": 63, "hodge_filtration": {"3": 42}}"#).unwrap();
    let o = hodgekit(&["paper-check", "--paper-table", path.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("[FAIL] mixed Hodge numbers and audit"));
    let (c, doc) = json(&["mhs", "--paper-table", path.to_str().unwrap()]);
    assert_eq!(c, 0, "an audit reports disagreements without failing");
    assert!(!doc["result"]["report"]["audit"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn every_command_validates() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["jring", "--poly", CUBIC_THREEFOLD, "--degree", "2"],
        vec!["hodge", "--poly", "fermat-quintic-5"],
        vec!["twisted", "--poly", "x0^3 + x1^3 + x2^3 + x3^3"],
        vec!["mhs", "--pair", CUBIC_THREEFOLD],
        vec!["mhs", "--pair", "fermat-cubic-6"],
        vec!["deform", "--pair", CUBIC_THREEFOLD],
        vec!["gm", "--pair", CUBIC_THREEFOLD],
        vec!["certify", "--pair", CUBIC_THREEFOLD],
    ];
    for args in runs {
        let (c, doc) = json(&args);
        assert_eq!(c, 0, "{args:?}: {doc}");
        assert_eq!(doc["status"], "ok");
        validate(&doc);
    }
}

#[test]
fn reports_are_byte_reproducible() {
    for args in [["--json", "gm", "--pair", CUBIC_THREEFOLD], ["--json", "deform", "--pair", CUBIC_THREEFOLD]] {
        let a = hodgekit(&args);
        let b = hodgekit(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = hodgekit(&["twisted", "--poly", "fermat-cubic-6", "--k", "1"]);
    assert_eq!(a.stdout, hodgekit(&["twisted", "--poly", "fermat-cubic-6", "--k", "1"]).stdout);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let args = ["twisted", "--poly", "x0^3 + x1^3 + x2^3 + x3^3 + 2*x0*x1*x2"];
    let text = stdout(&hodgekit(&args));
    let (_, doc) = json(&args);
    for cell in doc["result"]["cells"].as_array().unwrap() {
        let mut parts: Vec<String> = Vec::new();
        for (q, v) in cell["h"].as_object().unwrap() {
            if v.as_u64().unwrap() > 0 {
                parts.push(format!("q={q}: {v}"));
            }
        }
        let line = format!("h^q(Omega^{}({})) = {{{}}}  chi = {}", cell["p"], cell["k"], parts.join(", "), cell["chi"]);
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }

    let text = stdout(&hodgekit(&["mhs"]));
    let (_, doc) = json(&["mhs"]);
    let report = &doc["result"]["report"];
    for h in report["w_lower_hodge"].as_array().unwrap().iter().chain(report["gr_upper_hodge"].as_array().unwrap()) {
        let line = format!("h_{}^{{{},{}}} = {}", h["weight"], h["p"], h["q"], h["dim"]);
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }
    assert!(text.contains(&format!("dim H^5(U) = {}", report["dim_total"])));
}

#[test]
fn directions_file() {
    let dir = std::env::temp_dir().join(format!("hodgekit-dirs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dirs.txt");
    std::fs::write(&path, "# Y-fixing directions\nx0*x1*x4\n\nx2^2*x4 - 1/2*x1*x3*x4\n").unwrap();
    let (c, doc) = json(&["gm", "--pair", CUBIC_THREEFOLD, "--directions", path.to_str().unwrap()]);
    assert_eq!(c, 0, "{doc}");
    assert_eq!(doc["result"]["directions"].as_array().unwrap().len(), 2);
    assert_eq!(doc["result"]["connection"][0]["matrix"]["rows"], 10);
    validate(&doc);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn work_budget_refusal() {
    let o = Command::new(env!("CARGO_BIN_EXE_hodgekit"))
        .args(["hodge", "--poly", "fermat-cubic-7"])
        .env("HODGEKIT_MAX_DIM", "20")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("HODGEKIT_MAX_DIM"));
}
