//! End-to-end behavior of the `legdga` binary: reports, determinism, and the
//! exit-code contract.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .display()
        .to_string()
}

fn legdga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legdga"))
        .args(args)
        .output()
        .expect("spawn legdga")
}

fn report(args: &[&str]) -> serde_json::Value {
    let out = legdga(args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn analyze_produces_a_report_envelope() {
    let r = report(&["analyze", &corpus("gamma_cl.json")]);
    assert_eq!(r["schema"], "legdga-report/1");
    assert_eq!(r["results"]["diagram"]["crossings"][0]["label"], "a");
    assert_eq!(r["results"]["diagram"]["crossings"][0]["degree"], 1);
    assert_eq!(r["results"]["diagram"]["enclosed_area"], "0");
}

#[test]
fn reports_are_byte_identical() {
    let args = ["dga", &corpus("gamma_cl_tilde.json"), "--mode", "symmetric", "--field", "f2"];
    let a = legdga(&args);
    let b = legdga(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn symmetric_dga_report_renders_the_differential() {
    let r = report(&["dga", &corpus("gamma_cl_tilde.json"), "--mode", "symmetric", "--field", "f2"]);
    assert_eq!(r["results"]["differential"][0]["generator"], "a");
    assert_eq!(r["results"]["differential"][0]["value"], "1 + lambda + mu*lambda");
    assert_eq!(r["results"]["differential"][1]["value"], "a + mu*a*mu^-1");
    assert_eq!(r["results"]["d_squared_zero"], true);
    assert_eq!(
        r["results"]["degree_zero_homology_ideal"][0],
        "1 + lambda + mu*lambda"
    );
}

#[test]
fn knot_mode_report() {
    let r = report(&["dga", &corpus("gamma_cl.json"), "--mode", "knot", "--field", "q"]);
    assert_eq!(r["results"]["differential"][0]["value"], "1 + -1*t");
}

#[test]
fn lch_ranks_over_gf5() {
    let r = report(&[
        "invariants", "lch", &corpus("gamma_cl_tilde.json"),
        "--field", "fp:5", "--aug", "mu=1,lambda=2",
    ]);
    assert_eq!(r["results"]["ranks"]["1"], 1);
    assert_eq!(r["results"]["ranks"]["2"], 1);
}

#[test]
fn augmentation_variety_report() {
    let r = report(&[
        "invariants", "augvar", &corpus("gamma_cl_tilde.json"), "--field", "fp:5",
    ]);
    let sols = r["results"]["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 3);
}

#[test]
fn schema_errors_exit_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"schema\": \"unknown/9\"}}").unwrap();
    let out = legdga(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = legdga(&["analyze", "/nonexistent/curve.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mode_mismatch_exits_3() {
    let out = legdga(&["dga", &corpus("gamma_cl.json"), "--mode", "bogus"]);
    assert_eq!(out.status.code(), Some(3));
    // A quotient diagram with cone markers cannot be spun plainly.
    let out = legdga(&["dga", &corpus("gamma_cl.json"), "--mode", "spun"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_augmentations_exit_5() {
    let out = legdga(&[
        "invariants", "lch", &corpus("gamma_cl_tilde.json"),
        "--field", "fp:5", "--aug", "mu=1,lambda=4",
    ]);
    assert_eq!(out.status.code(), Some(5));
    let out = legdga(&[
        "invariants", "lch", &corpus("gamma_cl_tilde.json"),
        "--field", "fp:5", "--aug", "mu=1,nonsense=4",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn acyclicity_certificate() {
    let r = report(&[
        "invariants", "acyclic", &corpus("gamma_cl_tilde.json"),
        "--field", "f2", "--specialize", "mu=1,lambda=1",
    ]);
    assert_eq!(r["results"]["acyclic"], true);
    assert_eq!(r["results"]["witness"], "a");
}

#[test]
fn augmentation_polynomial_report() {
    let r = report(&[
        "invariants", "augpoly", &corpus("gamma_cl_tilde.json"),
        "--field", "fp:5", "--aug", "mu=1,lambda=2",
    ]);
    assert_eq!(r["results"]["polynomial"], "1 + lambda + mu*lambda");
}
