//! Black-box tests of the command-line binary: exit codes, byte-for-byte
//! output determinism, JSON shape, the generator grammar, and file input.

use std::process::{Command, Output};

use serde_json::Value;

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nbspec"));
    cmd.args(args).env_remove("NBSPEC_TOL");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn cluster_multiplicity(doc: &Value, re: f64, im: f64) -> Option<u64> {
    doc["clusters"].as_array().unwrap().iter().find_map(|c| {
        let v = c["value"].as_array()?;
        let close = (v[0].as_f64()? - re).abs() < 1e-9 && (v[1].as_f64()? - im).abs() < 1e-9;
        close.then(|| c["multiplicity"].as_u64())?
    })
}

#[test]
fn spectrum_of_cycle_four_lists_fourth_roots_twice() {
    let doc = json_of(&run(&["spectrum", "--gen", "cycle:4"]));
    assert_eq!(doc["dimension"], 8);
    assert_eq!(doc["target"], "B");
    for (re, im) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
        assert_eq!(cluster_multiplicity(&doc, re, im), Some(2), "{re}+{im}i");
    }
    assert_eq!(doc["spectral_radius"].as_f64(), Some(1.0));
    assert_eq!(doc["min_modulus"].as_f64(), Some(1.0));
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = ["spectrum", "--gen", "pinwheel:2,3", "--target", "k"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let args = ["verify", "--gen", "complete:4", "--suite", "all"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn pinwheel_spectral_radius_matches_closed_form() {
    let doc = json_of(&run(&["spectrum", "--gen", "pinwheel:2,3"]));
    let rho = doc["spectral_radius"].as_f64().unwrap();
    assert!((rho - 3f64.powf(1.0 / 3.0)).abs() < 1e-6, "rho = {rho}");
}

#[test]
fn k_spectrum_of_path_three_has_zeros_and_unit_pair() {
    let doc = json_of(&run(&["spectrum", "--gen", "path:3", "--target", "k"]));
    assert_eq!(doc["dimension"], 6);
    assert_eq!(cluster_multiplicity(&doc, 0.0, 0.0), Some(4));
    assert_eq!(cluster_multiplicity(&doc, 1.0, 0.0), Some(1));
    assert_eq!(cluster_multiplicity(&doc, -1.0, 0.0), Some(1));
}

#[test]
fn verify_all_suites_pass_on_complete_four() {
    let out = run(&["verify", "--gen", "complete:4", "--suite", "all"]);
    let doc = json_of(&out);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["failures"], 0);
    assert!(doc["reports"].as_array().unwrap().len() >= 10);
}

#[test]
fn sweep_of_three_vertices_covers_all_labeled_graphs() {
    let doc = json_of(&run(&["sweep", "--n", "3", "--suite", "detect"]));
    assert_eq!(doc["graphs"], 8);
    assert_eq!(doc["failures"], 0);
    assert_eq!(doc["first_failure"], Value::Null);
}

#[test]
fn file_input_accepts_commented_edge_lists() {
    let path = std::env::temp_dir().join(format!("nbspec-cli-{}.edges", std::process::id()));
    std::fs::write(&path, "n 4 # a square\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let doc = json_of(&run(&["spectrum", "--file", path.to_str().unwrap()]));
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["dimension"], 8);
    assert_eq!(doc["graph"]["n"], 4);
    assert_eq!(doc["graph"]["m"], 4);
}

#[test]
fn matrix_out_writes_matrix_market() {
    let path = std::env::temp_dir().join(format!("nbspec-cli-{}.mtx", std::process::id()));
    let out = run(&[
        "spectrum",
        "--gen",
        "cycle:3",
        "--matrix-out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("%%MatrixMarket"), "{text}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["spectrum", "--gen", "bogus:3"] as &[&str],
        &["spectrum", "--gen", "cycle:2"],
        &["spectrum"],
        &["no-such-command"],
        &["spectrum", "--gen", "cycle:4", "--file", "also.edges"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(!out.stderr.is_empty(), "args {args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("generator"));
}

#[test]
fn tolerance_env_is_validated_and_applied() {
    for bad in ["abc", "-1", "0", "inf"] {
        let out = run_with_env(&["spectrum", "--gen", "cycle:3"], &[("NBSPEC_TOL", bad)]);
        assert_eq!(out.status.code(), Some(1), "NBSPEC_TOL = {bad}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("NBSPEC_TOL"));
    }
    let doc = json_of(&run_with_env(
        &["spectrum", "--gen", "cycle:3"],
        &[("NBSPEC_TOL", "1e-8")],
    ));
    assert_eq!(doc["tolerance"].as_f64(), Some(1e-8));
}

#[test]
fn verification_failures_exit_two() {
    let out = run_with_env(
        &["verify", "--gen", "complete:4", "--suite", "decomposition"],
        &[("NBSPEC_TOL", "1e-16")],
    );
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "fail");
    assert!(doc["failures"].as_u64().unwrap() >= 1);
}

#[test]
fn join_generator_glues_at_the_named_vertices() {
    let doc = json_of(&run(&["spectrum", "--gen", "join:cycle:3@0+path:3@0"]));
    assert_eq!(doc["graph"]["n"], 5);
    assert_eq!(doc["graph"]["m"], 5);
}
