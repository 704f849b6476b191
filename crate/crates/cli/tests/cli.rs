use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use amalgam_cli::InstanceSpec;

fn amalgam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(args)
        .env_remove("AMALGAM_CAP")
        .output()
        .expect("binary runs")
}

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("instances")
        .join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn shipped_instances_verify() {
    for entry in fs::read_dir(shipped("")).unwrap() {
        let path = entry.unwrap().path();
        let out = amalgam(&["check", "--instances", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["report_format"], 1);
        assert_eq!(report["totals"]["falsified"], 0);
    }
}

#[test]
fn catalog_files_round_trip_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let bounds = write(
        dir.path(),
        "bounds.json",
        r#"{"max_target_size": 4, "gorenstein_max_size": 8, "semigroup_max_frobenius": 6,
            "scaled_max_frobenius": 3, "max_scale": 2, "series_precisions": [2]}"#,
    );
    let out_dir = dir.path().join("catalog");
    let out = amalgam(&[
        "catalog",
        "--bounds",
        &bounds,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("total: "));
    let mut files = 0;
    for entry in fs::read_dir(&out_dir).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let spec = InstanceSpec::from_json(&text).unwrap();
        assert_eq!(spec.to_json() + "\n", text);
        files += 1;
    }
    assert!(files > 50);
    let out = amalgam(&[
        "check",
        "--instances",
        out_dir.to_str().unwrap(),
        "--format",
        "table",
        "--workers",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("spec-partition"));
}

#[test]
fn truncated_instance_is_a_syntax_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(shipped("z4-duplication.json")).unwrap();
    let path = write(dir.path(), "cut.json", &text[..text.len() / 2]);
    let out = amalgam(&["check", "--instances", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("syntax error at line"), "{err}");
}

#[test]
fn semantic_errors_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "gcd.json",
        r#"{"format": 1, "name": "g", "kind": "semigroup", "generators": [4, 6]}"#,
    );
    assert_eq!(
        amalgam(&["check", "--instances", &path]).status.code(),
        Some(2)
    );
    let path = write(
        dir.path(),
        "hom.json",
        r#"{"format": 1, "name": "h", "kind": "finite", "A": {"zmod": 2},
            "B": {"zmod": 4}, "f": {"images": []}, "J": []}"#,
    );
    let out = amalgam(&["check", "--instances", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f does not extend to a homomorphism"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let path = shipped("z4-duplication.json");
    let out = amalgam(&[
        "check",
        "--instances",
        path.to_str().unwrap(),
        "--suites",
        "radical,spectrum",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_selection_limits_the_report() {
    let path = shipped("z4-duplication.json");
    let out = amalgam(&[
        "check",
        "--instances",
        path.to_str().unwrap(),
        "--suites",
        "radical,hom-lambda",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let lines = report["instances"][0]["results"].as_array().unwrap();
    assert_eq!(lines.len(), 2);
    assert!(lines
        .iter()
        .all(|l| l["statement"].as_str().is_some_and(|s| !s.is_empty())));
}

#[test]
fn resource_caps_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "big.json",
        r#"{"format": 1, "name": "big", "kind": "finite", "A": {"zmod": 16},
            "B": {"zmod": 16}, "f": {"images": []}, "J": [1]}"#,
    );
    let out = amalgam(&["check", "--instances", &path, "--cap", "64"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(["check", "--instances", &path])
        .env("AMALGAM_CAP", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        amalgam(&["check", "--instances", &path]).status.code(),
        Some(0)
    );

    let bounds = write(dir.path(), "bounds.json", r#"{"max_target_size": 4096}"#);
    let out = amalgam(&[
        "catalog",
        "--bounds",
        &bounds,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn report_file_and_timings() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let path = shipped("series-p3.json");
    let out = amalgam(&[
        "check",
        "--instances",
        path.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
        "--timings",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(value["instances"][0]["results"][0]["millis"].is_u64());
}

#[test]
fn spec_prints_the_lifted_primes() {
    let path = shipped("diagonal-into-product.json");
    let out = amalgam(&["spec", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["primes"].as_array().unwrap().len(), 1);
    assert_eq!(value["primes"][0]["tag"]["kind"], "lift-from-a");
    let path = shipped("series-p3.json");
    assert_eq!(
        amalgam(&["spec", "--instance", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
