use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgkratzer")).args(args).output().expect("binary runs")
}

fn with_config(dir: &Path, mode: &str, json: &str, extra: &[&str]) -> Output {
    let path = dir.join("config.json");
    std::fs::write(&path, json).unwrap();
    let mut args = vec![mode, "--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn table(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn spectrum_default_row() {
    let out = run(&["spectrum"]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    assert_eq!(rows.len(), 1);
    let e_r: f64 = rows[0][column(&h, "e_r")].parse().unwrap();
    let e_nr: f64 = rows[0][column(&h, "e_nr")].parse().unwrap();
    assert!((e_r - 0.9855).abs() < 1e-4);
    assert!((e_nr + 0.014590).abs() < 1e-6);
}

#[test]
fn coulomb_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "coulomb", r#"{"coulomb": {"qe": 1, "ell": {"min": 0, "max": 1}}}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    let closed: Vec<f64> = rows.iter().map(|r| r[column(&h, "e_closed")].parse().unwrap()).collect();
    assert_eq!(closed.len(), 2);
    assert!((closed[0] - 0.6).abs() < 1e-12);
    assert!((closed[1] - 15.0 / 17.0).abs() < 1e-12);
    for r in &rows {
        let root: f64 = r[column(&h, "e_root")].parse().unwrap();
        assert!((root - r[column(&h, "e_closed")].parse::<f64>().unwrap()).abs() < 1e-10);
    }
}

#[test]
fn invalid_configs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = with_config(dir.path(), "spectrum", r#"{"quantum": {"n": {"min": 2, "max": 1}}}"#, &[]);
    assert_eq!(empty.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&empty.stderr).contains("empty"));
    let unknown = with_config(dir.path(), "spectrum", r#"{"potential": {"a0": 0.1, "r0": 1, "z": 0}}"#, &[]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown field"));
    let wrong_mode = with_config(dir.path(), "spectrum", r#"{"mode": "coulomb"}"#, &[]);
    assert_eq!(wrong_mode.status.code(), Some(1));
}

#[test]
fn verify_default_passes_with_strict_json() {
    let out = run(&["verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).expect("stdout is only the JSON report");
    assert_eq!(report["ok"], Value::Bool(true));
    assert_eq!(report["failed"], 0);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 13);
    for c in checks {
        assert_ne!(c["status"], "fail", "{c}");
    }
    // the human summary went to stderr
    assert!(String::from_utf8_lossy(&out.stderr).contains("passed"));
}

#[test]
fn coarse_oracle_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "verify", r#"{"tolerances": {"oracle_points": 50}}"#, &["--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let check = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "oracle_convergence").unwrap();
    assert_eq!(check["status"], "fail");
    assert!(check["detail"].as_str().unwrap().contains("grid too coarse"));
}

#[test]
fn qe_scan_series_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "scan", r#"{"scan": {"variable": "qe", "values": [0.1, 0.05, 0.025]}}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let qe: f64 = r[column(&h, "scan_qe")].parse().unwrap();
            let err: f64 = r[column(&h, "series2_error")].parse().unwrap();
            (qe.ln(), err.ln())
        })
        .collect();
    let slope = (pts[0].1 - pts[2].1) / (pts[0].0 - pts[2].0);
    assert!((slope - 6.0).abs() <= 0.5, "slope {slope}");
}

#[test]
fn dimension_scan_shows_coulomb_degeneracy() {
    // N = 2n + 2ℓ + D − 1: (D = 5, ℓ = 0) and (D = 3, ℓ = 1) coincide
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{"scan": {"variable": "dimension", "values": [3, 5], "target": "coulomb"},
                   "coulomb": {"qe": 1, "ell": {"min": 0, "max": 1}}}"#;
    let out = with_config(dir.path(), "scan", json, &[]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    let find = |d: &str, ell: &str| -> String {
        rows.iter()
            .find(|r| r[column(&h, "D")] == d && r[column(&h, "ell")] == ell)
            .map(|r| r[column(&h, "e_closed")].clone())
            .unwrap()
    };
    assert_eq!(find("3", "1"), find("5", "0"));
    assert_ne!(find("3", "0"), find("5", "0"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{"potential": {"a0": 0.2, "r0": 1.5, "c": 0.1}, "dimensions": [3, 4],
                   "quantum": {"n": {"min": 0, "max": 2}, "n_tilde": {"min": 0, "max": 1}, "m": {"min": 0, "max": 1}}}"#;
    let a = with_config(dir.path(), "spectrum", json, &[]);
    let b = with_config(dir.path(), "spectrum", json, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (h, rows) = table(&a);
    assert_eq!(rows.len(), 24);
    // lexicographic (D, n, ñ, m) order whatever the thread schedule
    let keys: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| ["D", "n", "n_tilde", "m"].iter().map(|c| r[column(&h, c)].parse().unwrap()).collect())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn all_rows_failing_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "spectrum", r#"{"potential": {"a": -1, "b": 0}}"#, &[]);
    assert_eq!(out.status.code(), Some(2));
    let (h, rows) = table(&out);
    assert!(rows[0][column(&h, "error")].contains("no bound state"));
}

#[test]
fn out_file_and_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let out = run(&["coulomb", "--out", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["columns"][0], "qe");
    assert_eq!(doc["rows"][0][4], 0.6);
}

#[test]
fn wavefn_samples_both_components() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_config(dir.path(), "wavefn", r#"{"wavefn": {"r_points": 10, "theta_points": 5}}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    let (h, rows) = table(&out);
    let comp = column(&h, "component");
    assert_eq!(rows.iter().filter(|r| r[comp] == "radial").count(), 10);
    assert_eq!(rows.iter().filter(|r| r[comp] == "polar").count(), 5);
    // ñ = 0 polar factor is symmetric about θ = π/2
    let polar: Vec<f64> = rows.iter().filter(|r| r[comp] == "polar").map(|r| r[column(&h, "value")].parse().unwrap()).collect();
    assert!((polar[0] - polar[4]).abs() < 1e-12);
}
