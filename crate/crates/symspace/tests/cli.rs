//! End-to-end tests of the `symspace` binary: output schemas, determinism,
//! parameter-closure rejection, exit codes, and spot values against the
//! library.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};
use std::time::Instant;

use symspace::cli::load_samples;
use symspace::kernels::limit::{edge_density, sine_scalar};
use symspace::qdet::{correlation, KernelEvaluator};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symspace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn sample_is_byte_identical_across_thread_counts() {
    fn args(threads: &'static str) -> Vec<&'static str> {
        vec![
            "sample", "--family", "CII", "--rank", "3", "--L", "1", "--count", "40", "--seed",
            "11", "--threads", threads,
        ]
    }
    let one = stdout_of(&args("1"));
    let four = stdout_of(&args("4"));
    assert_eq!(one, four);
}

#[test]
fn sample_csv_has_schema_line_and_round_trips() {
    let text = stdout_of(&[
        "sample", "--family", "AIII", "--rank", "3", "--L", "0", "--count", "10", "--seed", "7",
    ]);
    assert!(text.starts_with("# schema-version: 1\n"));
    assert!(text.contains("family,R,L,seed,theta_1,theta_2,theta_3,forced"));
    let rows = load_samples(&text).unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.family == "AIII" && r.r == 3 && r.seed == 7));
    assert!(rows
        .iter()
        .all(|r| r.thetas.windows(2).all(|w| w[0] <= w[1])));

    let jsonl = stdout_of(&[
        "sample", "--family", "AIII", "--rank", "3", "--L", "0", "--count", "10", "--seed", "7",
        "--format", "jsonl",
    ]);
    assert_eq!(load_samples(&jsonl).unwrap(), rows);
}

#[test]
fn family_parameter_overrides_are_rejected() {
    let out = run(&[
        "sample", "--family", "AIII", "--rank", "3", "--count", "5", "--a", "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("family table"), "stderr: {err}");
}

#[test]
fn empty_argv_is_a_usage_error() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.to_ascii_lowercase().contains("usage"), "stderr: {err}");
}

#[test]
fn malformed_grid_is_rejected() {
    let out = run(&["kernel", "--limit", "sine", "--beta", "2", "--grid", "1:0:0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_spot_value_matches_the_edge_density() {
    // one-point grid at ξ = 0.5: the diagonal of the β = 2 hard-edge kernel
    // is the edge density itself
    let text = stdout_of(&[
        "kernel", "--limit", "bessel", "--beta", "2", "--a", "0", "--grid", "0.5:0.5:1",
    ]);
    let row = text
        .lines()
        .find(|l| !l.starts_with('#') && !l.starts_with("x,"))
        .expect("data row");
    let value: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((value - edge_density(2, 0.0, 0.5).unwrap()).abs() < 1e-12);
}

#[test]
fn correlate_matches_direct_evaluation() {
    let text = stdout_of(&[
        "correlate", "--limit", "sine", "--beta", "2", "--points", "0.0,0.4", "--format", "jsonl",
    ]);
    let report: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    let eval = |x: f64, y: f64| Ok(sine_scalar(x, y));
    let want = correlation(2, &KernelEvaluator::Scalar(&eval), &[0.0, 0.4]).unwrap();
    assert!((report["value"].as_f64().unwrap() - want).abs() < 1e-12);
    assert_eq!(report["n"], 2);
}

#[test]
fn density_pipeline_reports_ks_against_the_flat_reference() {
    let samples = stdout_of(&["sample", "--family", "CUE", "--rank", "6", "--count", "400", "--seed", "3"]);
    let mut child = bin()
        .args(["density", "--reference", "uniform", "--bins", "24"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(samples.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bin_left,bin_right,density,reference"));
    let ks_line = text
        .lines()
        .find(|l| l.starts_with("# ks: "))
        .expect("ks comment");
    let ks: f64 = ks_line.trim_start_matches("# ks: ").parse().unwrap();
    assert!(ks < 0.1, "pooled CUE angles vs flat law: ks = {ks}");
}

#[test]
fn config_file_fills_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "family=DIII\nrank=4\ncount=3\nseed=5\n").unwrap();
    let from_config = stdout_of(&["sample", "--config", conf.to_str().unwrap()]);
    let rows = load_samples(&from_config).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.family == "DIII" && r.seed == 5));

    let overridden = stdout_of(&["sample", "--config", conf.to_str().unwrap(), "--seed", "6"]);
    let rows = load_samples(&overridden).unwrap();
    assert!(rows.iter().all(|r| r.seed == 6));
}

#[test]
fn mcmc_method_rejects_circular_families() {
    let out = run(&["sample", "--family", "CUE", "--rank", "2", "--count", "3", "--method", "mcmc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("circular"));
}

#[test]
fn plot_script_requires_an_output_path() {
    let out = run(&[
        "density", "--input", "/nonexistent.csv", "--plot-script",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_smoke_passes_within_budget_and_emits_the_report() {
    let start = Instant::now();
    let out = run(&["verify", "--suite", "smoke"]);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        out.status.success(),
        "verify smoke failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(elapsed < 300.0, "smoke suite took {elapsed:.0} s");
    let text = String::from_utf8(out.stdout).unwrap();
    let mut gates = 0;
    for line in text.lines() {
        let entry: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["test_name", "metric", "value", "tolerance", "pass"] {
            assert!(entry.get(key).is_some(), "report line missing {key}: {line}");
        }
        assert_eq!(entry["pass"], true, "failed gate in smoke suite: {line}");
        gates += 1;
    }
    assert!(gates > 40, "expected a full report, got {gates} gates");
}
