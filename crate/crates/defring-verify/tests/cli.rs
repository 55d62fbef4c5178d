//! Integration tests for the external interface: the `verify` binary, its
//! exit codes, and the determinism of the report.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use defring_verify::report::{CheckRecord, Invocation, Report, TimedRecord};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parsed_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn full_suite_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["all", "--cap", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    assert!(report["summary"]["total"].as_u64().unwrap() > 100);
    let checks = report["checks"].as_array().unwrap();
    // sorted by (id, params) and structurally complete
    let mut keys: Vec<(String, String)> = Vec::new();
    for c in checks {
        assert_eq!(c["status"], "pass");
        for field in ["id", "statement", "params", "witness"] {
            assert!(!c[field].is_null(), "missing {field}");
        }
        keys.push((
            c["id"].as_str().unwrap().to_string(),
            c["params"].to_string(),
        ));
    }
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "checks must be sorted by (id, params)");
}

#[test]
fn report_is_byte_identical_modulo_timing() {
    let a = run(&["relation", "--cap", "4"]);
    let b = run(&["relation", "--cap", "4", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let mut va = parsed_stdout(&a);
    let mut vb = parsed_stdout(&b);
    va.as_object_mut().unwrap().remove("timing");
    vb.as_object_mut().unwrap().remove("timing");
    assert_eq!(
        serde_json::to_string(&va).unwrap(),
        serde_json::to_string(&vb).unwrap()
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["relation", "--cap", "x"]).status.code(), Some(2));
    assert_eq!(
        run(&["points", "--family", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn points_subcommand_reports_component_data() {
    let out = run(&[
        "points", "--family", "punkte1", "--lambda", "1", "--kappa", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = parsed_stdout(&out);
    let checks = report["checks"].as_array().unwrap();
    let verifies: Vec<&serde_json::Value> = checks
        .iter()
        .filter(|c| c["id"] == "points/verify")
        .collect();
    assert_eq!(verifies.len(), 4);
    let mut deltas = Vec::new();
    for v in verifies {
        assert_eq!(v["status"], "pass");
        deltas.push((
            v["params"]["n"].as_str().unwrap().to_string(),
            v["witness"]["delta"].as_str().unwrap().to_string(),
        ));
    }
    deltas.sort();
    assert_eq!(
        deltas,
        vec![
            ("1".to_string(), "1".to_string()),
            ("2".to_string(), "-1".to_string()),
            ("3".to_string(), "1".to_string()),
            ("4".to_string(), "-1".to_string()),
        ]
    );
}

#[test]
fn groebner_subcommand_reports_dimension_four() {
    let out = run(&["groebner"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parsed_stdout(&out);
    let det = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "groebner/determinantal")
        .expect("determinantal record present");
    assert_eq!(det["witness"]["dim_f2"], 4);
    assert_eq!(det["witness"]["dim_f3"], 4);
}

#[test]
fn bijektion_subcommand_records_sign() {
    let out = run(&["bijektion", "--lambda", "0", "--mu", "0", "--kappa", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parsed_stdout(&out);
    for c in report["checks"].as_array().unwrap() {
        if c["id"] == "bijektion/specialization" {
            assert_eq!(c["witness"]["sign_vs_psi_z_inverse"], -1);
        }
    }
}

#[test]
fn report_assembly_flags_failures() {
    // the exit-1 path is driven by Report::all_passed
    let failing = TimedRecord {
        record: CheckRecord {
            id: "synthetic/failure".into(),
            statement: "synthetic".into(),
            params: BTreeMap::new(),
            status: "fail".into(),
            witness: serde_json::Value::Null,
        },
        millis: 0,
    };
    let report = Report::assemble(
        Invocation {
            subcommand: "all".into(),
            cap: 6,
            lambda: None,
            mu: None,
            kappa: None,
            family: None,
        },
        vec![failing],
        0,
    );
    assert!(!report.all_passed());
    assert_eq!(report.summary.failed, 1);
}
