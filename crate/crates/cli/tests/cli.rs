use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(workspace().join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "session"))
        .collect();
    v.sort();
    assert!(v.len() >= 4);
    v
}

fn reeskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeskit")).args(args).output().unwrap()
}

fn json_report(file: &Path, extra: &[&str]) -> (Output, String) {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let mut args = vec![file.to_str().unwrap(), "--json", out_path.to_str().unwrap(), "--no-timing"];
    args.extend_from_slice(extra);
    let out = reeskit(&args);
    let text = std::fs::read_to_string(&out_path).unwrap_or_default();
    (out, text)
}

fn session_file(dir: &tempfile::TempDir, body: &str) -> PathBuf {
    let p = dir.path().join("s.session");
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn fixture_reports_validate_against_the_schema() {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(workspace().join("schema/report.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for f in fixtures() {
        let (out, text) = json_report(&f, &[]);
        assert!(out.status.success(), "{}: {}", f.display(), String::from_utf8_lossy(&out.stdout));
        let report: Value = serde_json::from_str(&text).unwrap();
        let errors: Vec<String> = validator.iter_errors(&report).map(|e| format!("{e} at {}", e.instance_path)).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", f.display());
    }
}

#[test]
fn timed_reports_validate_too() {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(workspace().join("schema/report.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let f = workspace().join("fixtures/double_point.session");
    let out = reeskit(&[f.to_str().unwrap(), "--json", "-"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["commands"][0]["timing_ms"].is_u64());
    assert!(validator.is_valid(&report));
    let mut wrong = report.clone();
    wrong["version"] = Value::from("reeskit-report/0");
    assert!(!validator.is_valid(&wrong));
    let mut wrong = report;
    wrong["commands"][0]["verdict"] = Value::from("maybe");
    assert!(!validator.is_valid(&wrong));
}

#[test]
fn same_seed_gives_identical_bytes() {
    for f in fixtures() {
        let (_, a) = json_report(&f, &["--seed", "7"]);
        let (_, b) = json_report(&f, &["--seed", "7"]);
        let (_, c) = json_report(&f, &["--seed", "7", "--parallel"]);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{}", f.display());
        assert_eq!(a, c, "{}", f.display());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = session_file(&dir, "ideal m = x\n");
    let out = reeskit(&[bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    assert_eq!(reeskit(&["/nonexistent/file.session"]).status.code(), Some(2));

    // the singular point breaks the regular-ring containment
    let failing = session_file(
        &dir,
        "ring {vars: x1 x2 x3; mod: x1*x2 + x3^3}\nideal p = x1, x3\nideal m = x1, x2, x3\ncmd: check zariski-nagata --p p --q m --nmax 2 --sep-p x2\ncmd: gb m\n",
    );
    let out = reeskit(&[failing.to_str().unwrap(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("zariski-nagata") && stdout.contains(": fail"), "{stdout}");
    assert!(stdout.contains("[2] gb"));

    let out = reeskit(&[failing.to_str().unwrap(), "--fail-fast"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("[2]"));
}

#[test]
fn print_is_a_fixed_point() {
    for f in fixtures() {
        let once = reeskit(&[f.to_str().unwrap(), "--print"]);
        assert!(once.status.success());
        let dir = tempfile::tempdir().unwrap();
        let p = session_file(&dir, &String::from_utf8(once.stdout.clone()).unwrap());
        let twice = reeskit(&[p.to_str().unwrap(), "--print"]);
        assert_eq!(once.stdout, twice.stdout, "{}", f.display());
    }
}

#[test]
fn budget_flag_reaches_the_engine() {
    let f = workspace().join("fixtures/curve.session");
    let out = reeskit(&[f.to_str().unwrap(), "--budget", "5", "--json", "-", "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors: Vec<&str> = report["commands"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|c| c["error"].as_str())
        .collect();
    assert!(errors.iter().any(|e| e.contains("budget")), "{errors:?}");
}
