use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const MACHINE: &str = r#"{
  "group": "cyclic:2",
  "alphabet": ["u"],
  "lambda": "1/2",
  "mu": {"u": [["1/2", "1/4"], ["1/4", "1/2"]]},
  "nu": {"u": [["1/4", "1/2"], ["1/2", "1/4"]]},
  "structure": "product-subgroup"
}"#;

fn ifsa(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifsa")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn workdir() -> TempDir {
    let d = tempfile::tempdir().unwrap();
    write(&d, "m.json", MACHINE);
    write(&d, "e1.json", r#"{"mu": ["1/2", "9/10"], "nu": ["2/5", "0"]}"#);
    write(&d, "s0.json", r#"{"mu": ["1", "0"], "nu": ["0", "1"]}"#);
    d
}

#[test]
fn subgroup_check_reports_degree_and_verdict() {
    let d = workdir();
    let o = ifsa(d.path(), &["check", "subgroup", "cyclic:2", "e1.json", "--lambda", "1/2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("overall: 3/5"), "{out}");
    assert!(out.contains("verdict: PASS (3/5 >= 1/2)"), "{out}");
}

#[test]
fn failing_verdict_exits_one() {
    let d = workdir();
    let o = ifsa(d.path(), &["check", "subgroup", "cyclic:2", "e1.json", "--lambda", "2/3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verdict: FAIL"));
}

#[test]
fn group_check_without_lambda_prints_degrees_only() {
    let d = workdir();
    let o = ifsa(d.path(), &["check", "subgroup", "cyclic:2", "e1.json"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("verdict"));
}

#[test]
fn machine_check_defaults_to_machine_lambda() {
    let d = workdir();
    let o = ifsa(d.path(), &["check", "subsemi", "m.json", "s0.json"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("subsemi.ii            3/4"), "{out}");
    assert!(out.contains("verdict: PASS (1/2 >= 1/2)"), "{out}");
}

#[test]
fn json_report_is_stable_across_runs() {
    let d = workdir();
    let args = ["check", "kernel-star", "m.json", "s0.json", "--max-len", "3", "--format", "json"];
    let a = stdout(&ifsa(d.path(), &args));
    let b = stdout(&ifsa(d.path(), &args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v.get("overall").is_some());
}

#[test]
fn machine_run_prints_word_degrees() {
    let d = workdir();
    let o = ifsa(d.path(), &["machine", "run", "m.json", "--from", "0", "--word", "u u", "--to", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "mu=1/4 nu=1/2");
    let e = ifsa(d.path(), &["machine", "run", "m.json", "--from", "1", "--word", "", "--to", "1"]);
    assert_eq!(stdout(&e).trim(), "mu=1 nu=0");
}

#[test]
fn machine_extend_json_has_both_matrices() {
    let d = workdir();
    let o = ifsa(d.path(), &["machine", "extend", "m.json", "--word", "u u", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu"], serde_json::json!([["1/2", "1/4"], ["1/4", "1/2"]]));
    assert_eq!(v["nu"], serde_json::json!([["1/4", "1/2"], ["1/2", "1/4"]]));
}

#[test]
fn machine_validate_reports_structure() {
    let d = workdir();
    let o = ifsa(d.path(), &["machine", "validate", "m.json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn group_make_then_validate_round_trips() {
    let d = workdir();
    assert_eq!(code(&ifsa(d.path(), &["group", "make", "cyclic:4", "-o", "g.json"])), 0);
    let o = ifsa(d.path(), &["group", "validate", "g.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order 4"));
}

#[test]
fn invalid_inputs_exit_two() {
    let d = workdir();
    write(&d, "bad_group.json", r#"{"name": "bad", "order": 2, "table": [[1, 1], [0, 0]]}"#);
    write(
        &d,
        "inconsistent.json",
        &MACHINE.replace(r#"[["1/4", "1/2"], ["1/2", "1/4"]]"#, r#"[["3/4", "1/2"], ["1/2", "1/4"]]"#),
    );
    let cases: [&[&str]; 6] = [
        &["group", "validate", "bad_group.json"],
        &["group", "validate", "cyclic:0"],
        &["machine", "validate", "inconsistent.json"],
        &["machine", "run", "missing.json", "--from", "0", "--word", "u", "--to", "0"],
        &["check", "subgroup", "cyclic:2", "e1.json", "--lambda", "0"],
        &["check", "subgroup", "cyclic:3", "e1.json"],
    ];
    for args in cases {
        let o = ifsa(d.path(), args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} gives a reason");
    }
}

#[test]
fn hom_image_and_preimage() {
    let d = workdir();
    write(&d, "f.json", r#"{"source": "cyclic:4", "target": "cyclic:2", "map": [0, 1, 0, 1]}"#);
    write(&d, "a.json", r#"{"mu": ["1", "1/2", "3/4", "1/2"], "nu": ["0", "1/4", "1/4", "1/2"]}"#);
    let o = ifsa(d.path(), &["hom", "image", "f.json", "a.json", "-o", "img.json"]);
    assert_eq!(code(&o), 0);
    let img: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("img.json")).unwrap()).unwrap();
    // Fiber {0,2}: max(1,3/4), min(0,1/4). Fiber {1,3}: max(1/2,1/2), min(1/4,1/2).
    assert_eq!(img["mu"], serde_json::json!(["1", "1/2"]));
    assert_eq!(img["nu"], serde_json::json!(["0", "1/4"]));
    let o = ifsa(d.path(), &["hom", "preimage", "f.json", "img.json"]);
    assert_eq!(code(&o), 0);
    let pre: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(pre["mu"], serde_json::json!(["1", "1/2", "1", "1/2"]));
    assert_eq!(pre["nu"], serde_json::json!(["0", "1/4", "0", "1/4"]));
}

#[test]
fn verify_extension_law_passes() {
    let d = workdir();
    let o = ifsa(
        d.path(),
        &["verify", "thm-ext", "--group", "cyclic:2", "--denominator", "2", "--max-len", "3", "--junit", "r.xml"],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("counterexamples: 0"));
    let xml = fs::read_to_string(d.path().join("r.xml")).unwrap();
    assert!(xml.contains("<testsuite") && !xml.contains("<failure"));
}

#[test]
fn verify_mutation_exits_one() {
    let d = workdir();
    let o = ifsa(
        d.path(),
        &["verify", "thm-ext", "--group", "cyclic:2", "--denominator", "1", "--max-len", "2", "--mutate"],
    );
    assert_eq!(code(&o), 1);
    assert!(!stdout(&o).contains("counterexamples: 0"));
}

#[test]
fn verify_findings_exit_three() {
    let d = workdir();
    let args = [
        "verify",
        "thm-subsemi-star",
        "--group",
        "symmetric:3",
        "--denominator",
        "4",
        "--alphabet",
        "2",
        "--samples",
        "300",
        "--format",
        "json",
        "-o",
        "r.json",
    ];
    let o = ifsa(d.path(), &args);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).contains("counterexamples: 0"));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("r.json")).unwrap()).unwrap();
    assert!(!r["counterexamples"].as_array().unwrap().is_empty());
}
