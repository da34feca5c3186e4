use std::path::Path;
use std::process::{Command, Output};

use srn_bench::harness::{self, BenchConfig, MetricReport, TableRow, EGO_ID};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srn-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_report(p: &Path) -> MetricReport {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn simulate_then_evaluate_matches_in_process_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s1.csv");
    let json = dir.path().join("s1.json");
    let out = cli(&["simulate", "--scenario", "s1", "--out", path(&csv)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = cli(&["evaluate", "--in", path(&csv), "--ego", EGO_ID, "--out", path(&json)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let cfg = BenchConfig::default();
    let rec = harness::simulate("s1", cfg.metrics.agent_radius_default, &cfg).unwrap();
    let expected = harness::evaluate(&rec, &EGO_ID.into(), &cfg).unwrap();
    assert_eq!(read_report(&json), expected);
}

#[test]
fn echoed_config_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s4.csv");
    let first = dir.path().join("first.json");
    let cfg_file = dir.path().join("echo.json");
    let second = dir.path().join("second.json");
    assert!(
        cli(&["simulate", "--scenario", "s4", "--dt", "0.05", "--out", path(&csv)])
            .status
            .success()
    );
    assert!(
        cli(&["evaluate", "--in", path(&csv), "--ego", EGO_ID, "--out", path(&first)])
            .status
            .success()
    );
    let report = read_report(&first);
    std::fs::write(&cfg_file, serde_json::to_string(&report.config_echo).unwrap()).unwrap();
    let out = cli(&[
        "evaluate",
        "--in",
        path(&csv),
        "--ego",
        EGO_ID,
        "--config",
        path(&cfg_file),
        "--out",
        path(&second),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_report(&second), report);
    assert_eq!(report.dt, 0.05);
}

#[test]
fn series_export_has_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s2.csv");
    let series = dir.path().join("series.csv");
    assert!(cli(&["simulate", "--scenario", "s2", "--out", path(&csv)])
        .status
        .success());
    let out = cli(&[
        "evaluate",
        "--in",
        path(&csv),
        "--ego",
        EGO_ID,
        "--series",
        path(&series),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: MetricReport = serde_json::from_slice(&out.stdout).unwrap();
    let text = std::fs::read_to_string(&series).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("t,distance,pdce,conflict_potential,contribution_a,contribution_b")
    );
    assert_eq!(lines.count(), report.samples);
}

#[test]
fn table_rows_follow_the_intensity_ordering() {
    let out = cli(&["table", "--json"]);
    assert!(out.status.success());
    let rows: Vec<TableRow> = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r.scenario.as_str()).collect();
    assert_eq!(names, ["s1", "s2", "s3", "s4"]);
    let i: Vec<f64> = rows.iter().map(|r| r.pair.intensity).collect();
    assert!(i[0] > i[1] && (i[1] - i[2]).abs() < 1e-9 && i[2] > i[3]);

    let text = cli(&["table"]);
    assert!(text.status.success());
    assert_eq!(String::from_utf8_lossy(&text.stdout).lines().count(), 5);
}

#[test]
fn missing_input_fails_with_a_diagnostic() {
    let out = cli(&["evaluate", "--in", "missing.csv", "--ego", EGO_ID]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("missing.csv"), "{stderr}");
}

#[test]
fn bad_invocations_fail() {
    assert!(!cli(&["launch"]).status.success());
    assert!(!cli(&["simulate", "--scenario", "s9"]).status.success());
    assert!(!cli(&["simulate", "--scenario", "s1", "--dt", "-1"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"metrics": {"unknown_knob": 1}}"#).unwrap();
    assert!(!cli(&["table", "--config", path(&cfg)]).status.success());
}

#[test]
fn unknown_ego_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s1.csv");
    assert!(cli(&["simulate", "--scenario", "s1", "--out", path(&csv)])
        .status
        .success());
    let out = cli(&["evaluate", "--in", path(&csv), "--ego", "nobody"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nobody"));
}
