//! End-to-end tests of the `hypsum` binary: JSON outputs, exit codes, and
//! byte-level determinism.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypsum"))
}

fn systems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("systems")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hypsum-test-{name}-{}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn bound_sl2_sym1() {
    let file = systems_dir().join("sl2-sym1.json");
    let out = run(&["bound", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["d"], 3);
    assert_eq!(v["bound"], "2/1");
    assert_eq!(v["lowdim"], false);
    assert_eq!(v["homogeneous"], false);
    assert_eq!(v["quasi_finite_span"], true);
    // The emitted rational re-parses to the same value.
    let parsed = hypsum_core::ratio::parse_rat(v["bound"].as_str().unwrap()).unwrap();
    assert_eq!(parsed, hypsum_core::ratio::rat_int(2));
}

#[test]
fn sum_gl2_identity_over_f2() {
    let file = systems_dir().join("gl2-std-q2.json");
    let out = run(&["sum", file.to_str().unwrap(), "--A", "identity"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["counts"], serde_json::json!([4, 2]));
    assert_eq!(v["magnitude"], 2.0);
    assert_eq!(v["total"], 6);
}

#[test]
fn verify_kloosterman_all_passes() {
    let file = systems_dir().join("kloosterman-q5.json");
    let out = run(&["verify", file.to_str().unwrap(), "--all"]);
    assert!(out.status.success(), "exit 0 on a passing verify");
    let v = stdout_json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 25);
    assert_eq!(v["asserted_entries"], 16);
    assert_eq!(v["all_asserted_pass"], true);
    assert_eq!(v["bound"], "2/1");
}

#[test]
fn outputs_are_byte_identical() {
    let file = systems_dir().join("kloosterman-q5.json");
    let args = ["verify", file.to_str().unwrap(), "--samples", "8", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "identical inputs, identical bytes");

    let other_seed = run(&["verify", file.to_str().unwrap(), "--samples", "8", "--seed", "8"]);
    assert_ne!(first.stdout, other_seed.stdout, "seed changes the sample");
}

#[test]
fn orbit_and_polytope_listings() {
    let file = systems_dir().join("a2-fundamental.json");
    let out = run(&["orbit", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["weyl_order"], 6);
    assert_eq!(v["orbits"][0]["orbit_size"], 3);

    let out = run(&["polytope", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["delta_infty"]["dim_ambient"], 2);
    assert!(v["delta_infty"]["vertices"].as_array().unwrap().len() >= 3);
}

#[test]
fn nondegen_reports_statuses() {
    let file = systems_dir().join("sl2-sym1.json");
    let out = run(&["nondegen", file.to_str().unwrap(), "--extension-cap", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["faces_without_origin"], 2);
    assert_eq!(v["face_weyl_orbits"], 1);
    assert_eq!(v["overall"]["status"], "no_witness_up_to");

    // Zero coefficients are degenerate with a reported witness.
    let out = run(&["nondegen", file.to_str().unwrap(), "--A", "zero", "--extension-cap", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["overall"]["status"], "degenerate");
    assert!(v["overall"]["witness_g"].is_object());
}

#[test]
fn exit_code_1_on_validation_errors() {
    let out = run(&["bound", "/nonexistent/system.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "validation");

    let bad = write_temp(
        "badrep",
        r#"{"group": {"type": "sl2"}, "representations": [{"weight": [1]}]}"#,
    );
    let out = run(&["bound", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(bad).ok();
}

#[test]
fn usage_errors_are_validation_errors() {
    let out = run(&["bogus-subcommand"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify"]); // missing file argument
    assert_eq!(out.status.code(), Some(1));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("bound"));
}

#[test]
fn exit_code_2_on_size_guard() {
    // Sym^3 has 16 coefficient entries: 7^16 tuples trips the sweep guard.
    let big = write_temp(
        "guard",
        r#"{"group": {"type": "sl2"}, "representations": [{"sym": 3}], "field": {"p": 7}}"#,
    );
    let out = run(&["verify", big.to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "size_guard");
    std::fs::remove_file(big).ok();
}

#[test]
fn exit_code_3_on_failing_asserted_entry() {
    // A rank-2 torus with a single weight has a segment as its Newton
    // polytope at infinity: the chamber cut is lower-dimensional, the bound
    // degenerates to the vacuous 0 (flagged), and any nondegenerate tuple
    // with a nonzero sum fails the assertion. This system violates the
    // quasi-finiteness hypothesis, and the harness makes that visible.
    let thin = write_temp(
        "thin",
        r#"{"group": {"type": "torus", "n": 2},
            "representations": [{"weight": [1, 1]}],
            "field": {"p": 3}}"#,
    );
    let out = run(&["verify", thin.to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out); // report still emitted before the failure code
    assert_eq!(v["lowdim"], true);
    assert_eq!(v["all_asserted_pass"], false);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "verify_failed");
    std::fs::remove_file(thin).ok();
}

#[test]
fn verify_multivariate_torus_sample() {
    let file = systems_dir().join("torus2-spanning.json");
    let out = run(&["verify", file.to_str().unwrap(), "--samples", "6", "--seed", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["d"], 2);
    assert_eq!(v["all_asserted_pass"], true);
    assert_eq!(v["lowdim"], false);
    // The zero-tuple anchor is degenerate, the identity anchor asserted.
    assert_eq!(v["entries"][0]["nondegen"]["status"], "degenerate");
    assert_eq!(v["entries"][1]["asserted"], true);
}

#[test]
fn field_overrides() {
    let file = systems_dir().join("kloosterman-q5.json");
    let q7 = run(&["sum", file.to_str().unwrap(), "--q", "7"]);
    assert!(q7.status.success());
    let v = stdout_json(&q7);
    assert_eq!(v["q"], 7);
    assert_eq!(v["total"], 6);

    let f9 = run(&["sum", file.to_str().unwrap(), "--p", "3", "--m", "2"]);
    assert!(f9.status.success());
    let v = stdout_json(&f9);
    assert_eq!(v["q"], 9);
    assert_eq!(v["total"], 8);
}

#[test]
fn extension_field_coefficients_parse() {
    // Coefficient entries may be generator polynomials.
    let ext = write_temp(
        "ext",
        r#"{"group": {"type": "torus", "n": 1},
            "representations": [{"weight": [1]}, {"weight": [-1]}],
            "field": {"p": 2, "m": 2},
            "coefficients": [[[[0, 1]]], [[1]]]}"#,
    );
    let out = run(&["sum", ext.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["q"], 4);
    assert_eq!(v["total"], 3);
    std::fs::remove_file(ext).ok();
}
