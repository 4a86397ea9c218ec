use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wjf_core::format;
use wjf_core::rational::int;
use wjf_core::weyl::{orbit_combination, OrbitName};

fn wjf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wjf")).args(args).env_remove("WJF_DEFAULT_ORDER").output().expect("spawn wjf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn expand_to(dir: &Path, name: &str, order: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let o = wjf(&["expand", name, "--order", order, "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn expand_writes_leading_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = expand_to(dir.path(), "phi_m4_1", "0");
    let phi = format::parse(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(phi.truncation(), 0);
    let expected = orbit_combination(&[(OrbitName::P1, int(-2)), (OrbitName::P44, int(1))]);
    assert_eq!(phi.coeff(0), &expected);
}

#[test]
fn expand_output_reserializes_identically() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(expand_to(dir.path(), "omega_m4_1", "2")).unwrap();
    assert_eq!(format::to_string(&format::parse(&text).unwrap()), text);
}

#[test]
fn expand_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(expand_to(dir.path(), "ez_m2_1", "3")).unwrap();
    let o = wjf(&["expand", "ez_m2_1", "--order", "3"]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn unknown_form_is_usage_error() {
    let o = wjf(&["expand", "nosuchform"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuchform"));
}

#[test]
fn default_order_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_wjf")).args(["expand", "phi2_m4_1"]).env("WJF_DEFAULT_ORDER", "1").output().unwrap();
    assert_eq!(format::parse(&stdout(&o)).unwrap().truncation(), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_wjf")).args(["expand", "phi2_m4_1"]).env_remove("WJF_DEFAULT_ORDER").output().unwrap();
    assert_eq!(format::parse(&stdout(&o)).unwrap().truncation(), 4);
    let o = Command::new(env!("CARGO_BIN_EXE_wjf")).args(["expand", "phi2_m4_1"]).env("WJF_DEFAULT_ORDER", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbit_suite_prints_five_ok_lines() {
    let o = wjf(&["verify", "--suite", "orbit"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.iter().all(|l| l.starts_with("OK orbit.")));
}

#[test]
fn empty_or_unknown_suite_is_usage_error() {
    assert_eq!(wjf(&["verify", "--suite", ""]).status.code(), Some(2));
    assert_eq!(wjf(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(wjf(&["verify"]).status.code(), Some(2));
}

#[test]
fn f4_suite_reports_average_and_reference_mismatch() {
    let o = wjf(&["verify", "--suite", "f4", "--order", "3"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "OK f4.average.phi_m4_1.zero"), "{out}");
    assert!(out.lines().any(|l| l == "OK f4.phi_m6_2.decomposition"));
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails, ["FAIL f4.heat_phi_m6_2.decomposition.reference: coefficient of E4*phi_m4_1^2, expected 3/4 got 5/4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decompose_named_form_over_d4() {
    let o = wjf(&["decompose", "--form", "f4_phi_m6_2", "--generators", "d4", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "phi_m6_2 -> -3/4\nphi_m2_1*phi_m4_1 -> -1\n");
}

#[test]
fn decompose_file_over_f4() {
    let dir = tempfile::tempdir().unwrap();
    let path = expand_to(dir.path(), "f4_phi_m8_2", "2");
    let o = wjf(&["decompose", "--input", path.to_str().unwrap(), "--generators", "f4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "f4_phi_m8_2 -> 1\n");
}

#[test]
fn decompose_non_invariant_form_is_algebraic_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = expand_to(dir.path(), "phi2_m4_1", "1");
    let o = wjf(&["decompose", "--input", path.to_str().unwrap(), "--generators", "f4"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not invariant"));
}

#[test]
fn decompose_requires_exactly_one_source() {
    assert_eq!(wjf(&["decompose", "--generators", "d4"]).status.code(), Some(2));
    assert_eq!(wjf(&["decompose", "--form", "phi_m4_1", "--input", "x", "--generators", "d4"]).status.code(), Some(2));
}

#[test]
fn act_f_sends_phi2_to_minus_phi3() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = expand_to(dir.path(), "phi2_m4_1", "3");
    let p3 = expand_to(dir.path(), "phi3_m4_1", "3");
    let out = dir.path().join("moved.json");
    let o = wjf(&["act", "--input", p2.to_str().unwrap(), "--element", "f", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let moved = fs::read_to_string(out).unwrap();
    let minus_p3 = format::parse(&fs::read_to_string(p3).unwrap()).unwrap().scale(&int(-1));
    assert_eq!(moved, format::to_string(&minus_p3));
}

#[test]
fn act_rejects_unknown_element() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = expand_to(dir.path(), "phi2_m4_1", "0");
    let o = wjf(&["act", "--input", p2.to_str().unwrap(), "--element", "k"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn restrict_omega_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let w = expand_to(dir.path(), "omega_m4_1", "3");
    let o = wjf(&["restrict", "--input", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"lattice\": \"D3\""));
    assert!(text.contains("\"coefficients\": []"));
}

#[test]
fn malformed_input_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"format\": \"wjf-1\"}").unwrap();
    let o = wjf(&["restrict", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = wjf(&["restrict", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
