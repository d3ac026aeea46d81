//! Drives the installed binary end to end: golden examples, document
//! input, sweeps, determinism, and the exit-status contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn gns() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gns"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exited normally")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn qubit_example_reports_the_pinned_values() {
    let output = gns().args(["example", "qubit"]).output().unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["null_dim"], 2);
    assert_eq!(report["quotient_dim"], 2);
    assert_eq!(report["m_unitary"], true);
    assert_eq!(report["pass"], true);
}

#[test]
fn epr_example_reports_the_pinned_values() {
    let output = gns().args(["example", "epr"]).output().unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["null_dim"], 0);
    assert_eq!(report["quotient_dim"], 4);
    assert_eq!(report["composite_unitary"], true);
    assert_eq!(report["pass"], true);
    // ρ₁ = diag(1/2, 1/2) up to rounding.
    let rho = report["rho1"].as_array().unwrap();
    assert!((rho[0][0][0].as_f64().unwrap() - 0.5).abs() <= 1e-10);
    assert!((rho[1][1][0].as_f64().unwrap() - 0.5).abs() <= 1e-10);
    assert!(rho[0][1][0].as_f64().unwrap().abs() <= 1e-10);
}

#[test]
fn epr_example_survives_tightened_tolerances() {
    let output = gns()
        .args([
            "example",
            "epr",
            "--tol",
            "rho1=1e-12",
            "--tol",
            "gram=1e-12",
            "--tol",
            "l_isometry=1e-12",
            "--tol",
            "composite_unitary=1e-12",
        ])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_json(&output)["pass"], true);
}

#[test]
fn example_text_format_renders() {
    let output = gns()
        .args(["example", "qubit", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("qubit example"));
    assert!(text.trim_end().ends_with("result: pass"));
}

#[test]
fn gns_document_reports_the_construction() {
    let output = gns()
        .args(["gns", "--input"])
        .arg(fixture("spin_up.json"))
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["quotient_dim"], 2);
    assert_eq!(report["null_dim"], 2);
    assert_eq!(report["pass"], true);
    assert_eq!(report["pi"].as_object().unwrap().len(), 4);
    assert_eq!(report["omega"].as_array().unwrap().len(), 2);
    assert_eq!(report["certificates"]["cyclic"], true);
}

#[test]
fn gns_trivial_algebra_has_unit_quotient() {
    let output = gns()
        .args(["gns", "--input"])
        .arg(fixture("trivial.json"))
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["quotient_dim"], 1);
    assert_eq!(report["null_dim"], 0);
}

#[test]
fn gns_rejects_non_unital_functionals_with_a_certificate() {
    let output = gns()
        .args(["gns", "--input"])
        .arg(fixture("non_unital.json"))
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    let report = stdout_json(&output);
    assert_eq!(report["pass"], false);
    let unitality = report["state_certificate"]["unitality"].as_f64().unwrap();
    assert!((unitality - 0.1).abs() <= 1e-12);
}

#[test]
fn gns_document_with_morphism_includes_the_induced_map() {
    let output = gns()
        .args(["gns", "--input"])
        .arg(fixture("mixed_with_restriction.json"))
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["pass"], true);
    let l = &report["L"];
    assert_eq!(l["certificates"]["intertwines"]["pass"], true);
    assert_eq!(l["certificates"]["isometry"]["pass"], true);
    // The identity morphism induces the identity on a fixed basis.
    let rows = l["L"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            let expected = f64::from(u8::from(i == j));
            assert!((entry[0].as_f64().unwrap() - expected).abs() <= 1e-9);
            assert!(entry[1].as_f64().unwrap().abs() <= 1e-9);
        }
    }
}

#[test]
fn sweep_passes_all_nine_laws() {
    let output = gns()
        .args(["sweep", "--seed", "0", "--instances", "50"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["pass"], true);
    let reports = report["reports"].as_array().unwrap();
    let ids: Vec<&str> = reports
        .iter()
        .map(|r| r["law_id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "states_functor",
            "oplax_identity",
            "oplax_composition",
            "rest_naturality",
            "rest_after_gns",
            "modification_coherence",
            "zigzag",
            "adjunction",
            "universal_property",
        ]
    );
    assert!(reports.iter().all(|r| r["pass"] == true));
}

#[test]
fn sweep_output_is_byte_identical_per_seed() {
    let run = || {
        gns()
            .args(["sweep", "--seed", "11", "--instances", "6"])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let other = gns()
        .args(["sweep", "--seed", "12", "--instances", "6"])
        .output()
        .unwrap();
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn sweep_reports_witnesses_under_impossible_tolerances() {
    let output = gns()
        .args([
            "sweep",
            "--instances",
            "10",
            "--tol",
            "oplax_composition=1e-15",
        ])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 1);
    let report = stdout_json(&output);
    assert_eq!(report["pass"], false);
    let failing = report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["law_id"] == "oplax_composition")
        .unwrap();
    assert_eq!(failing["pass"], false);
    let witnesses = failing["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    assert!(witnesses[0]["instance"].as_u64().unwrap() < 10);
    assert!(witnesses[0]["violation"].as_f64().unwrap() > 1e-15);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("qubit_report.json");
    let output = gns()
        .args(["example", "qubit", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    assert!(output.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    let unknown_law = gns()
        .args(["sweep", "--tol", "no_such_law=1"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&unknown_law), 2);

    let unknown_example = gns().args(["example", "psych"]).output().unwrap();
    assert_eq!(exit_code(&unknown_example), 2);

    let missing_file = gns()
        .args(["gns", "--input", "does_not_exist.json"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&missing_file), 2);
    let diagnostic = String::from_utf8(missing_file.stderr).unwrap();
    assert!(diagnostic.contains("does_not_exist.json"));

    let zero_instances = gns().args(["sweep", "--instances", "0"]).output().unwrap();
    assert_eq!(exit_code(&zero_instances), 2);
}

#[test]
fn malformed_documents_get_line_diagnostics() {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("broken.json");
    std::fs::write(&path, "{\n  \"blocks\": [2,\n}").unwrap();
    let output = gns().args(["gns", "--input"]).arg(&path).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    let diagnostic = String::from_utf8(output.stderr).unwrap();
    assert!(diagnostic.contains("line 3"));
}
