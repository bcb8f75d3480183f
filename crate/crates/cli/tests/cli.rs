use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hopfcert(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcert"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn build(dir: &Path, recipe: &str, stem: &str) {
    write(dir, &format!("{stem}.recipe.json"), recipe);
    let o = hopfcert(
        dir,
        &[
            "build",
            &format!("{stem}.recipe.json"),
            "--out",
            &format!("{stem}.json"),
            "--series-out",
            &format!("{stem}.series.json"),
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

const KS3_7: &str = r#"{"construct": "group_algebra", "group": "S3", "field": {"p": 7, "k": 1}}"#;

#[test]
fn build_and_certify_ks3() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    let o = hopfcert(d.path(), &["check-hopf", "h.json"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["command"], "check-hopf");
    assert!(report.get("timing_ms").is_none());

    assert_eq!(code(&hopfcert(d.path(), &["series-check", "h.json", "h.series.json"])), 0);
    let o = hopfcert(d.path(), &["frobenius-check", "h.json", "h.series.json", "--oracle", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).ends_with("exit 0\n"));

    write(d.path(), "k.json", r#"{"basis": ["()", "(1,2,3)", "(1,3,2)"]}"#);
    assert_eq!(code(&hopfcert(d.path(), &["clifford-report", "h.json", "k.json"])), 0);
    assert_eq!(code(&hopfcert(d.path(), &["lies-over", "h.json", "k.json"])), 0);
}

#[test]
fn timing_is_opt_in() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    let o = hopfcert(d.path(), &["check-hopf", "h.json", "--timing"]);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["timing_ms"].is_u64());
}

#[test]
fn out_flag_writes_report() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    let o = hopfcert(d.path(), &["series-check", "h.json", "h.series.json", "--out", "r.json"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(d.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["exit_code"], 0);
}

#[test]
fn modular_group_algebra_fails_the_gate() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    let o = hopfcert(d.path(), &["build", "h.recipe.json", "--field", "3,1", "--out", "h3.json"]);
    assert_eq!(code(&o), 0);
    let o = hopfcert(d.path(), &["frobenius-check", "h3.json", "h.series.json"]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let fail = report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["passed"] == false)
        .unwrap();
    assert!(fail["evidence"]["nilpotent_ideal_basis"].is_array());
}

#[test]
fn dual_in_characteristic_two_is_flagged() {
    let d = TempDir::new().unwrap();
    build(
        d.path(),
        r#"{"construct": "dual_group_algebra", "group": "S3", "field": {"p": 2, "k": 1}}"#,
        "d",
    );
    let o = hopfcert(d.path(), &["frobenius-check", "d.json", "d.series.json"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let notes = report["notes"].to_string();
    assert!(notes.contains("characteristic divides dimension"));
}

#[test]
fn mutated_antipode_fails_check_hopf() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    let mut h: Value = serde_json::from_str(&fs::read_to_string(d.path().join("h.json")).unwrap()).unwrap();
    // S(b_1) doubled
    for x in h["antipode"][1].as_array_mut().unwrap() {
        if x == &serde_json::json!([1]) {
            *x = serde_json::json!([2]);
        }
    }
    write(d.path(), "m.json", &h.to_string());
    let o = hopfcert(d.path(), &["check-hopf", "m.json"]);
    assert_eq!(code(&o), 1);
    // other commands refuse an invalid Hopf algebra as input
    let o = hopfcert(d.path(), &["series-check", "m.json", "h.series.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_inputs_exit_2() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    write(d.path(), "junk.json", "{ not json");
    assert_eq!(code(&hopfcert(d.path(), &["check-hopf", "junk.json"])), 2);
    assert_eq!(code(&hopfcert(d.path(), &["check-hopf", "missing.json"])), 2);
    assert_eq!(code(&hopfcert(d.path(), &["build", "junk.json"])), 2);
    write(d.path(), "k.json", r#"{"basis": ["nope"]}"#);
    assert_eq!(code(&hopfcert(d.path(), &["clifford-report", "h.json", "k.json"])), 2);
    assert_eq!(code(&hopfcert(d.path(), &["frobenius-check", "h.json", "h.series.json", "--field", "5,1"])), 2);
    assert_eq!(code(&hopfcert(d.path(), &["frobenius-check", "h.json"])), 2);
}

#[test]
fn lies_over_needs_semisimple_k() {
    let d = TempDir::new().unwrap();
    build(
        d.path(),
        r#"{"construct": "group_algebra", "group": "S3", "field": {"p": 3, "k": 1}}"#,
        "h",
    );
    write(d.path(), "k.json", r#"["()", "(1,2,3)", "(1,3,2)"]"#);
    assert_eq!(code(&hopfcert(d.path(), &["lies-over", "h.json", "k.json"])), 3);
}

#[test]
fn lies_over_with_module_files() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    write(d.path(), "k.json", r#"["()", "(1,2,3)", "(1,3,2)"]"#);
    // sign representation, basis in the builtin S3 order
    let h: Value = serde_json::from_str(&fs::read_to_string(d.path().join("h.json")).unwrap()).unwrap();
    let action: Vec<Value> = h["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| {
            let l = l.as_str().unwrap();
            let odd = l.matches(',').count() == 1;
            serde_json::json!([[if odd { -1 } else { 1 }]])
        })
        .collect();
    write(d.path(), "sign.json", &serde_json::json!({"dim": 1, "action": action}).to_string());
    let o = hopfcert(d.path(), &["lies-over", "h.json", "k.json", "sign.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn extension_field_flag() {
    let d = TempDir::new().unwrap();
    build(
        d.path(),
        r#"{"construct": "group_algebra", "group": "C3", "field": {"p": 2, "k": 1}}"#,
        "c",
    );
    let o = hopfcert(d.path(), &["frobenius-check", "c.json", "c.series.json", "--field", "2,2"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["instance"]["field"], "GF(2^2)");
}

#[test]
fn bicross_build_records_convention_and_series() {
    let d = TempDir::new().unwrap();
    build(
        d.path(),
        r#"{"construct": "bicrossproduct", "field": {"p": 7, "k": 1},
            "pair": {"group": "S3", "f": ["(1,2,3)"], "q": ["(1,2)"]}}"#,
        "b",
    );
    let h: Value = serde_json::from_str(&fs::read_to_string(d.path().join("b.json")).unwrap()).unwrap();
    assert!(h["metadata"]["convention"].is_string());
    assert_eq!(code(&hopfcert(d.path(), &["check-hopf", "b.json"])), 0);
    assert_eq!(code(&hopfcert(d.path(), &["series-check", "b.json", "b.series.json"])), 0);
    assert_eq!(code(&hopfcert(d.path(), &["frobenius-check", "b.json", "b.series.json"])), 0);
}

#[test]
fn reports_are_byte_identical() {
    let d = TempDir::new().unwrap();
    build(d.path(), KS3_7, "h");
    write(d.path(), "k.json", r#"["()", "(1,2,3)", "(1,3,2)"]"#);
    for args in [
        ["frobenius-check", "h.json", "h.series.json"],
        ["clifford-report", "h.json", "k.json"],
        ["lies-over", "h.json", "k.json"],
    ] {
        let a = hopfcert(d.path(), &[&args[..], &["--seed", "11"]].concat());
        let b = hopfcert(d.path(), &[&args[..], &["--seed", "11"]].concat());
        assert_eq!(a.stdout, b.stdout);
    }
}
