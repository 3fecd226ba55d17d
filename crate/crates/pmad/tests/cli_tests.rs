//! End-to-end runs of the `pmad` binary: file outputs, report schema,
//! determinism, exit codes.

use pmad::{Params, Sampler};
use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pmad"))
}

fn write_sample(path: &Path, n: usize) {
    let draws = Sampler::new(Params::new(0.9, 1.3).unwrap(), 4242).sample_n(n);
    let body: String = draws.iter().map(|v| format!("{v:.10}\n")).collect();
    fs::write(path, body).unwrap();
}

#[test]
fn fit_emits_reports_and_identities_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("sample.txt");
    write_sample(&input, 60);
    let out = dir.path().join("out");

    let output = bin()
        .args([
            "fit",
            input.to_str().unwrap(),
            "--bayes",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    for file in ["report.json", "ecdf.csv", "qq.csv"] {
        assert!(out.join(file).exists(), "{file} missing");
    }

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["manifest"]["command"], "fit");
    assert_eq!(report["sample_size"], 60);
    assert_eq!(report["fit"]["converged"], true);
    assert!(report["bayes"]["alpha_lindley"].is_f64());

    // stored criteria reproduce from stored ingredients
    for model in report["models"].as_array().unwrap() {
        let k = model["k"].as_f64().unwrap();
        let n = model["n"].as_f64().unwrap();
        let nll = model["neg_loglik"].as_f64().unwrap();
        let aic = model["aic"].as_f64().unwrap();
        let bic = model["bic"].as_f64().unwrap();
        assert!((aic - (2.0 * k + 2.0 * nll)).abs() <= 1e-7 * aic.abs());
        assert!((bic - (k * n.ln() + 2.0 * nll)).abs() <= 1e-7 * bic.abs());
    }
    let models = report["models"].as_array().unwrap();
    assert_eq!(models.len(), 2);
    assert!(models[0]["aic"].as_f64().unwrap() <= models[1]["aic"].as_f64().unwrap());

    // ecdf.csv: header + one row per observation
    let ecdf = fs::read_to_string(out.join("ecdf.csv")).unwrap();
    assert_eq!(ecdf.lines().count(), 61);
    assert!(ecdf.starts_with("x,"));
}

#[test]
fn simulate_is_deterministic_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (out_a, out_b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&out_a, &out_b] {
        let output = bin()
            .args([
                "simulate",
                "--alpha",
                "0.75",
                "--beta",
                "0.75",
                "--n",
                "10,20",
                "--reps",
                "150",
                "--seed",
                "9",
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(
            output.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    }
    for file in ["estimates.csv", "intervals.csv"] {
        let a = fs::read(out_a.join(file)).unwrap();
        let b = fs::read(out_b.join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
    // report.json may differ only in the manifest's recorded output directory
    let mut a: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("report.json")).unwrap()).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_b.join("report.json")).unwrap()).unwrap();
    a["manifest"]["output_dir"] = serde_json::Value::Null;
    b["manifest"]["output_dir"] = serde_json::Value::Null;
    assert_eq!(a, b, "report.json differs beyond the output path");
    // estimates.csv: header + (average, mse) rows per sample size
    let estimates = fs::read_to_string(out_a.join("estimates.csv")).unwrap();
    assert_eq!(estimates.lines().count(), 5);
}

#[test]
fn properties_reports_shape_and_entropy() {
    let dir = tempfile::tempdir().unwrap();
    let output = bin()
        .args([
            "properties",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let mean = report["shape"]["mean"].as_f64().unwrap();
    assert!((mean - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-9);
    assert!(report["entropy_grid"].as_array().unwrap().len() >= 4);
}

#[test]
fn exit_codes_separate_usage_from_computation() {
    let missing = bin()
        .args(["fit", "/nonexistent/input.txt"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&missing.stderr).expect("machine-readable error object");
    assert_eq!(err["error"]["kind"], "io");

    let bad_param = bin()
        .args(["properties", "--alpha=-1", "--beta", "1"])
        .output()
        .unwrap();
    assert_eq!(bad_param.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&bad_param.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");

    let unknown_flag = bin()
        .args(["fit", "--definitely-not-a-flag"])
        .output()
        .unwrap();
    assert_eq!(unknown_flag.status.code(), Some(2));
}

#[test]
fn gof_ranks_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("sample.txt");
    write_sample(&input, 80);
    let out = dir.path().join("out");
    let output = bin()
        .args([
            "gof",
            input.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let gof = fs::read_to_string(out.join("gof.csv")).unwrap();
    assert_eq!(gof.lines().count(), 3);
    assert!(gof.starts_with("model,"));
}
