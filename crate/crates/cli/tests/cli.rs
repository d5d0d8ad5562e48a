//! End-to-end tests of the `uncrel` binary: exit codes, report structure,
//! and cross-format consistency.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uncrel"))
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("uncrel_cli_test_{name}"))
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["verify-random", "--trials", "0"],
        &["verify-random", "--dim", "1"],
        &["verify-random", "--dim", "3", "--rank", "4"],
        &["oscillator", "--beta", "-1"],
        &["oscillator", "--fock-dims", "20,10"],
        &["qubit-family", "--tol", "0"],
    ];
    for args in cases {
        let status = bin().args(args).output().unwrap().status;
        assert_eq!(status.code(), Some(2), "args {args:?}");
    }
    // Unknown flags are usage errors too.
    let status = bin().arg("--bogus").output().unwrap().status;
    assert_eq!(status.code(), Some(2));
}

#[test]
fn missing_report_file_exits_three() {
    let status = bin()
        .args(["show-report", "/definitely/not/here.json"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(3));
}

#[test]
fn unwritable_output_exits_three() {
    let status = bin()
        .args(["qubit-family", "--out", "/definitely/not/a/dir/report.json"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(3));
}

#[test]
fn pure_state_sweep_reduces_to_schrodinger() {
    let out = bin()
        .args([
            "verify-random",
            "--dim",
            "2",
            "--rank",
            "1",
            "--trials",
            "100",
            "--seed",
            "11",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 100);
    for row in rows {
        let thm22 = row["lhs_thm22"].as_f64().unwrap();
        let schrodinger = row["lhs_schrodinger"].as_f64().unwrap();
        assert!((thm22 - schrodinger).abs() <= 1e-10);
    }
    assert_eq!(doc["summary"]["all_pass"], serde_json::Value::Bool(true));
}

#[test]
fn oscillator_failing_tolerance_exits_one() {
    let path = temp_path("osc_fail.json");
    let status = bin()
        .args([
            "oscillator",
            "--fock-dims",
            "4,6",
            "--tol",
            "1e-15",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(1));

    // show-report relays the failure.
    let status = bin().arg("show-report").arg(&path).output().unwrap().status;
    assert_eq!(status.code(), Some(1));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn show_report_passes_on_green_report() {
    let path = temp_path("qubit_ok.json");
    let status = bin()
        .args(["qubit-family", "--out"])
        .arg(&path)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let out = bin().arg("show-report").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command `qubit-family`"));
    assert!(text.contains("rows: 10"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn csv_and_json_print_identical_numbers() {
    let json_out = bin()
        .args(["qubit-family", "--format", "json"])
        .output()
        .unwrap();
    let csv_out = bin()
        .args(["qubit-family", "--format", "csv"])
        .output()
        .unwrap();
    assert!(json_out.status.success() && csv_out.status.success());

    let doc: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let csv_text = String::from_utf8(csv_out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();

    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (row, record) in rows.iter().zip(&records) {
        for field in ["p", "lhs_thm21", "lhs_thm22", "rhs", "m1_fwd", "M_thm22"] {
            let idx = headers.iter().position(|h| h == field).unwrap();
            let csv_text = &record[idx];
            // The JSON document prints the same 17-significant-digit string.
            let json_text = {
                let raw = serde_json::to_string(&row[field]).unwrap();
                raw.trim_matches('"').to_string()
            };
            let csv_value: f64 = csv_text.parse().unwrap();
            let json_value: f64 = json_text.parse().unwrap();
            assert_eq!(csv_value.to_bits(), json_value.to_bits(), "field {field}");
        }
    }
}

#[test]
fn oscillator_beta_fifty_hits_the_ground_state_limit() {
    let out = bin()
        .args([
            "oscillator",
            "--beta",
            "50",
            "--fock-dims",
            "10",
            "--tol",
            "1e-9",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rhs = doc["rows"][0]["rhs"].as_f64().unwrap();
    assert!((rhs - 0.25).abs() <= 1e-9, "rhs = {rhs}");
}

#[test]
fn report_rows_carry_every_field_with_exact_names() {
    let out = bin()
        .args(["verify-random", "--trials", "2", "--seed", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["version"], "1");
    let row = &doc["rows"][0];
    for field in [
        "commutator_term",
        "anticommutator_term",
        "skew_product_term",
        "m1_fwd",
        "m1_rev",
        "m2_fwd",
        "m2_rev",
        "m3_fwd",
        "m3_rev",
        "M_thm22",
        "M_tilde_thm41",
        "lhs_heisenberg",
        "lhs_schrodinger",
        "lhs_thm21",
        "lhs_thm22",
        "lhs_thm41",
        "rhs",
        "margins",
        "skew_info_A",
        "skew_info_B",
        "centered",
        "notes",
    ] {
        assert!(!row[field].is_null(), "missing field {field}");
    }
    for bound in ["heisenberg", "schrodinger", "thm21", "thm22", "thm41"] {
        assert!(row["margins"][bound].is_number());
    }
}

#[test]
fn thousand_trial_sweep_exits_zero() {
    let out = bin()
        .args([
            "verify-random",
            "--dim",
            "4",
            "--trials",
            "1000",
            "--seed",
            "7",
            "--tol",
            "1e-9",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["all_pass"], serde_json::Value::Bool(true));
    for bound in ["heisenberg", "schrodinger", "thm21", "thm22", "thm41"] {
        let min = doc["summary"][format!("min_margin_{bound}")].as_f64().unwrap();
        assert!(min >= -1e-9, "{bound} min margin {min}");
    }
}
