// SPDX-License-Identifier: Apache-2.0
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.display().to_string()
}

fn compquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_fixture_passes() {
    let out = compquad(&["verify", &fixture("split_octonions.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["pass"], Value::Bool(true));
    assert!(r["report"].as_array().unwrap().iter().all(|c| c["pass"] == Value::Bool(true)));
}

#[test]
fn derive_three_times_is_byte_identical() {
    let dir = std::env::temp_dir().join(format!("compquad-derive-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let start = fixture("split_octonions.json");
    let mut path = start.clone();
    for k in 0..3 {
        let next = dir.join(format!("d{k}.json")).display().to_string();
        let out = compquad(&["derive", &path, "--out", &next]);
        assert_eq!(out.status.code(), Some(0));
        path = next;
    }
    let a = std::fs::read(&start).unwrap();
    let b = std::fs::read(&path).unwrap();
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn improper_lift_reports_polarization_mismatch() {
    let out = compquad(&["lift", &fixture("split_octonions.json"), &fixture("reflection.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["kind"], "PolarizationMismatch");
}

#[test]
fn proper_lift_certifies() {
    for field in ["Q", "F3", "F5"] {
        let out = compquad(&["--field", field, "lift", &fixture("split_octonions.json"), &fixture("rotation.json")]);
        assert_eq!(out.status.code(), Some(0), "{field}");
    }
}

#[test]
fn corrupted_fixture_fails_naming_the_identity() {
    let out = compquad(&["verify", &fixture("split_octonions_corrupted.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let first = r["first_failure"].as_str().unwrap();
    assert!(first.starts_with("(d) "), "{first}");
    assert!(String::from_utf8_lossy(&out.stderr).contains(first));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(compquad(&["verify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(compquad(&["no-such-verb"]).status.code(), Some(2));
    let out = compquad(&["lift", &fixture("split_octonions.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["kind"], "Parse");
}

#[test]
fn field_override_reinterprets_inputs() {
    let out = compquad(&["--field", "F2", "verify", &fixture("split_octonions.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = compquad(&["--field", "F2", "classify"]);
    assert_eq!(report(&out)["result"]["kind"], "Char2");
}

#[test]
fn algebra_verbs_pass_on_fixtures() {
    let alg = fixture("split_octonion_algebra.json");
    let runs: [&[&str]; 6] = [
        &["pointed", &fixture("split_octonions_pointed.json")],
        &["kaplansky", &alg],
        &["para", &alg],
        &["isot", &alg, &fixture("identity_triple.json")],
        &["--field", "F5", "psi-a", &alg, &fixture("omega_element.json")],
        &["local-lift", &fixture("split_octonions.json"), &fixture("identity.json")],
    ];
    for args in runs {
        let out = compquad(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn selftest_restricted_to_f2() {
    let out = compquad(&["--field", "F2", "selftest", "--criteria", "1,2,3,5,12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 5);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.contains("PASS")).count(), 5);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--field", "F7", "--seed", "11", "selftest", "--criteria", "9"];
    assert_eq!(compquad(&args).stdout, compquad(&args).stdout);
}
