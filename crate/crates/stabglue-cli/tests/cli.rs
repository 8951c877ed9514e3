use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabglue"))
        .current_dir(dir)
        .args(args)
        .env_remove("STABGLUE_WORKERS")
        .output()
        .expect("binary runs")
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn result<'a>(report: &'a Value, check: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == check)
        .unwrap_or_else(|| panic!("{check} missing"))
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn negative_omega_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["tilt", "--beta", "2", "--omega", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega"));
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn unknown_flags_and_bad_literals_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["path", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(dir.path(), &["hn", "--object", "[1,2]@0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(dir.path(), &["path", "--eps", "1/8"]).status.code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_stabglue"))
        .current_dir(dir.path())
        .args(["glue"])
        .env("STABGLUE_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_report_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify-kernel", "--samples", "5000", "--seed", "7"];
    assert_eq!(
        run(dir.path(), &[&args[..], &["--report", "a.json"]].concat())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(dir.path(), &[&args[..], &["--report", "b.json"]].concat())
            .status
            .code(),
        Some(0)
    );
    let (a, b) = (report(dir.path(), "a.json"), report(dir.path(), "b.json"));
    assert_eq!(a["schema_version"], 1);
    assert_eq!(a["command"], "verify-kernel");
    assert_eq!(a["config"]["seed"], 7);
    assert_eq!(a["corpus_fingerprint"].as_str().unwrap().len(), 64);
    assert!(a["timings"]["total_ms"].is_u64());
    let r = result(&a, "kernel_inequality[2/3pi]");
    assert_eq!(r["passed"], true);
    assert_eq!(r["details"]["violations"], 0);
    let closed = result(&a, "ratio_bound[5/6pi]")["details"]["closed_form_sup"]
        .as_str()
        .unwrap()
        .to_string();
    let (n, d) = closed.split_once('/').unwrap();
    assert!((n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
    let mut a = without_timings(a);
    let mut b = without_timings(b);
    a["config"]["report"] = Value::Null;
    b["config"]["report"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn hn_dump_lists_factors_in_decreasing_phase() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "hn",
            "--object",
            "I[1,2]@0 + I[2,2]@1",
            "--charge",
            "[-1+i, i]",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "report.json");
    let factors = result(&r, "hn_filtration")["details"]["factors"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(factors.len(), 2);
    assert_eq!(factors[0]["object"], "I[2,2]@1");
    assert_eq!(factors[0]["phase"], "3/2");
}

#[test]
fn glue_passes_on_both_decompositions() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["glue", "--corpus-cap", "2"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = report(dir.path(), "report.json");
    assert_eq!(r["passed"], true);
    assert_eq!(result(&r, "truncation_semistability[sod1]")["passed"], true);
}

#[test]
fn config_file_is_read_and_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.json"),
        r#"{"samples": 100, "seed": 3, "report": "from_file.json"}"#,
    )
    .unwrap();
    let out = run(
        dir.path(),
        &["--config", "run.json", "verify-kernel", "--seed", "11"],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "from_file.json");
    assert_eq!(r["config"]["samples"], 100);
    assert_eq!(r["config"]["seed"], 11);
    std::fs::write(dir.path().join("bad.json"), r#"{"path_steps": 1000}"#).unwrap();
    assert_eq!(
        run(dir.path(), &["--config", "bad.json", "path"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn scan_writes_the_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "scan",
            "--corpus-cap",
            "2",
            "--beta-min",
            "-1/2",
            "--beta-count",
            "4",
            "--omega-count",
            "2",
            "--step",
            "1/64",
            "--csv",
            "grid.csv",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = std::fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "beta,omega,in_region,sup_ratio,heart_ok,ball_ok");
    assert_eq!(lines.len(), 9);
    assert!(lines[1].starts_with("-1/2,1/2,"));
    let r = report(dir.path(), "report.json");
    assert_eq!(
        result(&r, "grid_scan[sod0]")["details"]["rows"]
            .as_array()
            .unwrap()
            .len(),
        8
    );
}

#[test]
fn coarse_scan_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "scan",
            "--corpus-cap",
            "2",
            "--beta-min",
            "-3/2",
            "--beta-count",
            "4",
            "--omega-count",
            "2",
            "--step",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path(), "report.json");
    assert!(result(&r, "grid_scan[sod0]")["witness"].is_string());
}

#[test]
fn coarse_path_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["path", "--steps", "8", "--corpus-cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(dir.path(), "report.json");
    assert_eq!(r["passed"], false);
    let failing: Vec<&Value> = r["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().any(|c| c["witness"]
        .as_str()
        .is_some_and(|w| w.contains("sin(pi eps)"))));
}

#[test]
fn full_path_certifies_the_endpoint_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_stabglue"))
        .current_dir(dir.path())
        .args([
            "path",
            "--steps",
            "64",
            "--eps",
            "1/16",
            "--corpus-cap",
            "2",
        ])
        .env("STABGLUE_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = report(dir.path(), "report.json");
    assert_eq!(result(&r, "endpoint_rotation_check")["passed"], true);
    assert_eq!(result(&r, "continuity_check[sod0]")["details"]["links"], 63);
}
