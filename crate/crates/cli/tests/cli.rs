use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn offload(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_offload"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = offload(&full);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json for {args:?}: {e}"))
}

fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs()
}

const TRACE: &str = "job_id,app_name,job_size,bytes_written,bytes_read,exec_time_s
1,light,64,1000,1000,10
2,light,64,500,500,10
3,heavy,64,1000000000,1000000000,1
4,heavy,64,
";

fn trace_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(TRACE.as_bytes()).unwrap();
    f
}

#[test]
fn decide_offloads_small_job_to_fast_server() {
    let out = offload(&["decide", "-l", "msp430", "-r", "celeron", "--hop", "1e6", "-c", "1e6", "-i", "1010"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("verdict: OFFLOAD"));
}

#[test]
fn decide_keeps_job_local_when_remote_is_no_faster() {
    let out = offload(&["decide", "-l", "a9", "-r", "a9", "--hop", "1e9", "-c", "1e9", "-i", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("verdict: LOCAL"));
}

#[test]
fn decide_json_matches_text() {
    let args = ["decide", "-l", "msp430", "-r", "xeon", "--hop", "1e5:0.01", "--hop", "1e7", "-c", "5e6", "-i", "2e4"];
    let doc = json(&args);
    assert_eq!(doc["command"], "decide");
    let text = stdout(&offload(&args));
    assert!(text.starts_with(&format!("verdict: {}", doc["results"]["verdict"].as_str().unwrap())));
    let local = doc["results"]["local"]["total"].as_f64().unwrap();
    assert!(rel_eq(local, 5e6 / 16e6, 1e-12));
}

#[test]
fn malformed_number_is_a_usage_error() {
    let out = offload(&["decide", "-l", "a9", "-r", "xeon", "--hop", "1e6", "-c", "1e6", "-o", "abc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let out = offload(&["decide", "-l", "pentium", "-r", "xeon", "--hop", "1e6", "-c", "1e6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("msp430"));
}

#[test]
fn gamma_sweep_endpoints() {
    let doc = json(&[
        "sweep", "--axis", "gamma", "--from", "1e3", "--to", "1e6", "-l", "msp430", "-r", "celeron", "--fc", "1e-3",
    ]);
    let rows = doc["results"]["rows"].as_array().unwrap();
    let first = rows.first().unwrap()["capacity"].as_f64().unwrap();
    let last = rows.last().unwrap()["capacity"].as_f64().unwrap();
    assert!(rel_eq(first, 6.23e-5, 5e-3), "{first}");
    assert!(rel_eq(last, 6.23e-2, 5e-3), "{last}");
    // 25 grid points plus the crossover row
    assert_eq!(rows.len(), 26);
}

#[test]
fn fc_sweep_flips_verdict_once() {
    let doc = json(&[
        "sweep", "--axis", "fc", "--from", "1e-6", "--to", "10", "--points", "40", "-l", "msp430", "-r", "celeron",
        "--gamma", "1e6",
    ]);
    let verdicts: Vec<bool> = doc["results"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["favorable"].as_bool().unwrap())
        .collect();
    assert!(verdicts[0] && !verdicts[verdicts.len() - 1]);
    let flips = verdicts.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(flips, 1);
}

#[test]
fn remote_rate_sweep_never_favorable_when_transfer_dominates() {
    let out = offload(&[
        "--json", "sweep", "--axis", "remote-rate", "--from", "1e7", "--to", "1e12", "-l", "msp430", "--gamma", "1e3",
        "--fc", "1",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["results"]["crossover"].is_null());
    assert!(doc["results"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| !r["favorable"].as_bool().unwrap()));
    assert!(!doc["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn gamma_sweep_with_slower_remote_is_infeasible() {
    let out = offload(&["sweep", "--axis", "gamma", "--from", "1e3", "--to", "1e6", "-l", "xeon", "-r", "a9", "--fc", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inverted_range_is_a_usage_error() {
    let out = offload(&["sweep", "--axis", "fc", "--from", "1", "--to", "1e-3", "-l", "a9", "-r", "xeon", "--gamma", "1e6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tables_golden_values() {
    let text = stdout(&offload(&["tables"]));
    for needle in ["101", "1.001", "1000001", "10.222", "401.88", "6.23e-8", "6.25e-8", "2.70e-10", "1.22e-10"] {
        assert!(text.contains(needle), "missing {needle}");
    }
    let doc = json(&["tables"]);
    let rlr = doc["results"]["rlr"].as_array().unwrap();
    assert_eq!(rlr.len(), 6);
    let a9_i3 = rlr.iter().find(|c| c["local"] == "a9" && c["remote"] == "i3").unwrap();
    assert!(rel_eq(a9_i3["value"].as_f64().unwrap(), 36.8 / 3.6, 1e-12));
}

#[test]
fn trace_classifies_apps() {
    let f = trace_file();
    let path = f.path().to_str().unwrap();
    let out = offload(&["trace", path, "--assumed-rate", "1e9", "--capacity", "1e-5"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));

    let doc = json(&["trace", path, "--assumed-rate", "1e9", "--capacity", "1e-5"]);
    let apps = doc["results"]["apps"].as_array().unwrap();
    let benefit = |name: &str| {
        apps.iter()
            .find(|a| a["stats"]["app_name"] == name)
            .map(|a| a["benefit"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(benefit("light"), "all");
    assert_eq!(benefit("heavy"), "none");
    assert_eq!(doc["results"]["skipped"], 1);
}

#[test]
fn trace_capacity_from_processors() {
    let f = trace_file();
    let doc = json(&[
        "trace",
        f.path().to_str().unwrap(),
        "--assumed-rate",
        "1e9",
        "-l",
        "msp430",
        "-r",
        "celeron",
        "--gamma",
        "1e6",
    ]);
    let cap = doc["inputs_echo"]["capacity"].as_f64().unwrap();
    assert!(rel_eq(cap, 1e6 * (1.0 / 16e6 - 1.0 / 6.43e9), 1e-12));
}

#[test]
fn trace_missing_file_or_no_rows_is_usage_error() {
    let out = offload(&["trace", "/nonexistent/trace.csv", "--assumed-rate", "1e9", "--capacity", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "job_id,app_name,job_size,bytes_written,bytes_read,exec_time_s").unwrap();
    let out = offload(&["trace", f.path().to_str().unwrap(), "--assumed-rate", "1e9", "--capacity", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_is_deterministic() {
    let a = offload(&["validate", "--trials", "40", "--seed", "7"]);
    let b = offload(&["validate", "--trials", "40", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
    let doc = json(&["validate", "--trials", "40", "--seed", "7"]);
    assert_eq!(doc["results"]["passed"], true);
}

#[test]
fn json_errors_are_documents() {
    let doc = json(&["trace", "/nonexistent/trace.csv", "--assumed-rate", "1e9", "--capacity", "1"]);
    assert_eq!(doc["exit_code"], 2);
    assert!(doc["error"].as_str().unwrap().contains("nonexistent"));
}
