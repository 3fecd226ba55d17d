//! Command-line shell: fit, simulate, properties, gof.
//!
//! Exit codes: 0 success, 1 computational failure, 2 usage/IO error.
//! Failures print a machine-readable JSON error object to stderr.

use clap::{Parser, Subcommand};
use pmad::bayes::{elicit_hyperparams, fit_bayes_lindley};
use pmad::entropy::{delta_entropy, generalized_entropy, renyi_entropy, shannon_entropy};
use pmad::mle::{confidence_interval, fit_mle};
use pmad::model_selection::{
    fit_maxwell_baseline, gof_report, rank_models, summarize, FittedMaxwell, FittedPmad, GofReport,
};
use pmad::moments::{mean_deviation, mtsf, shape_summary};
use pmad::report::{
    ecdf_csv, gof_csv, ingest, qq_csv, to_report_json, write_text, FlagSet, RunManifest,
};
use pmad::simulation::{estimates_csv, intervals_csv, run_study, SimConfig, SimReport};
use pmad::{Error, Params};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pmad",
    version,
    about = "Power-family Maxwell lifetime model: fitting, simulation, properties, model comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the two-parameter model to a dataset file
    Fit {
        /// Plain-text data file (whitespace/comma separated positive reals)
        input: PathBuf,
        /// Confidence level for intervals
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        /// Age at which survival and hazard are reported
        #[arg(long = "t-eval", default_value_t = 1.0)]
        t_eval: f64,
        /// Prior variance for Bayes estimation (prior centered at the MLE)
        #[arg(long = "prior-variance", default_value_t = 0.5)]
        prior_variance: f64,
        /// Also compute Bayes estimates (Lindley + quadrature check)
        #[arg(long)]
        bayes: bool,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Monte-Carlo estimator-quality study
    Simulate {
        /// True scale parameter
        #[arg(long, default_value_t = 0.75)]
        alpha: f64,
        /// True shape parameter
        #[arg(long, default_value_t = 0.75)]
        beta: f64,
        /// Comma-separated per-replication sample sizes
        #[arg(long, value_delimiter = ',', default_values_t = vec![10, 20, 30, 50])]
        n: Vec<usize>,
        /// Replications per sample size
        #[arg(long, default_value_t = 5000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long = "t-eval", default_value_t = 1.0)]
        t_eval: f64,
        #[arg(long = "prior-variance", default_value_t = 0.5)]
        prior_variance: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Distribution properties at fixed parameters
    Properties {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long = "t-eval", default_value_t = 1.0)]
        t_eval: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Goodness-of-fit comparison of the registered models
    Gof {
        /// Plain-text data file
        input: PathBuf,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long = "t-eval", default_value_t = 1.0)]
        t_eval: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let obj = serde_json::json!({
                "error": { "kind": error_kind(&e), "message": e.to_string() }
            });
            eprintln!("{obj}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Divergent(_) => "divergent",
        Error::Overflow(_) => "overflow",
        Error::NoConvergence(_) => "no_convergence",
        Error::Singular(_) => "singular",
        Error::InvalidData(_) => "invalid_data",
        Error::Io(_) => "io",
    }
}

/// 2 for problems with the invocation or its inputs, 1 for failures of
/// the computation itself.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::InvalidData(_) => 2,
        _ => 1,
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Fit {
            input,
            level,
            t_eval,
            prior_variance,
            bayes,
            out,
        } => cmd_fit(input, level, t_eval, prior_variance, bayes, out),
        Command::Simulate {
            alpha,
            beta,
            n,
            reps,
            seed,
            level,
            t_eval,
            prior_variance,
            out,
        } => cmd_simulate(
            alpha,
            beta,
            n,
            reps,
            seed,
            level,
            t_eval,
            prior_variance,
            out,
        ),
        Command::Properties {
            alpha,
            beta,
            t_eval,
            out,
        } => cmd_properties(alpha, beta, t_eval, out),
        Command::Gof {
            input,
            level,
            t_eval,
            out,
        } => cmd_gof(input, level, t_eval, out),
    }
}

#[derive(Serialize)]
struct MaxwellFitOut {
    alpha_hat: f64,
    neg_loglik: f64,
}

#[derive(Serialize)]
struct FitReport<'a> {
    manifest: &'a RunManifest,
    sample_size: usize,
    sample_summary: pmad::model_selection::SampleSummary,
    fit: &'a pmad::mle::FitResult,
    maxwell_baseline: MaxwellFitOut,
    models: Vec<GofReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bayes: Option<pmad::bayes::BayesResult>,
}

fn cmd_fit(
    input: PathBuf,
    level: f64,
    t_eval: f64,
    prior_variance: f64,
    bayes: bool,
    out: PathBuf,
) -> Result<(), Error> {
    let manifest = RunManifest {
        command: "fit".into(),
        input_path: Some(input.clone()),
        params: None,
        flags: FlagSet {
            level: Some(level),
            t_eval: Some(t_eval),
            prior_variance: Some(prior_variance),
            bayes: Some(bayes),
            ..FlagSet::default()
        },
        output_dir: out.clone(),
    };
    manifest.validate()?;

    let d = ingest(&input)?;
    let fit = fit_mle(&d, t_eval, level)?;
    let fitted = Params::new(fit.alpha_hat, fit.beta_hat)?;
    let (ci_alpha, ci_beta) = confidence_interval(&fit, level)?;

    let (alpha_m, neg_ll_m) = fit_maxwell_baseline(&d)?;
    let models = rank_models(vec![
        gof_report(&d, &FittedPmad { params: fitted })?,
        gof_report(&d, &FittedMaxwell { alpha: alpha_m })?,
    ]);

    let bayes_out = if bayes {
        let prior = elicit_hyperparams(fit.alpha_hat, fit.beta_hat, prior_variance)?;
        Some(fit_bayes_lindley(&d, &prior)?)
    } else {
        None
    };

    let report = FitReport {
        manifest: &manifest,
        sample_size: d.len(),
        sample_summary: summarize(&d)?,
        fit: &fit,
        maxwell_baseline: MaxwellFitOut {
            alpha_hat: alpha_m,
            neg_loglik: neg_ll_m,
        },
        models,
        bayes: bayes_out,
    };
    write_text(&out.join("report.json"), &to_report_json(&report)?)?;
    write_text(&out.join("ecdf.csv"), &ecdf_csv(&d, fitted)?)?;
    write_text(&out.join("qq.csv"), &qq_csv(&d, fitted)?)?;

    println!(
        "fit {}: n={} alpha={:.6} beta={:.6} loglik={:.4} converged={}",
        d.label(),
        d.len(),
        fit.alpha_hat,
        fit.beta_hat,
        fit.loglik,
        fit.converged
    );
    println!(
        "  {:.0}% CI alpha=({:.6}, {:.6}) beta=({:.6}, {:.6})",
        level * 100.0,
        ci_alpha.0,
        ci_alpha.1,
        ci_beta.0,
        ci_beta.1
    );
    println!("wrote report.json, ecdf.csv, qq.csv to {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct SimulateReport<'a> {
    manifest: &'a RunManifest,
    studies: &'a [SimReport],
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    alpha: f64,
    beta: f64,
    n: Vec<usize>,
    reps: usize,
    seed: u64,
    level: f64,
    t_eval: f64,
    prior_variance: f64,
    out: PathBuf,
) -> Result<(), Error> {
    let manifest = RunManifest {
        command: "simulate".into(),
        input_path: None,
        params: Some(Params::new(alpha, beta)?),
        flags: FlagSet {
            alpha: Some(alpha),
            beta: Some(beta),
            n: Some(n.clone()),
            reps: Some(reps),
            seed: Some(seed),
            level: Some(level),
            t_eval: Some(t_eval),
            prior_variance: Some(prior_variance),
            ..FlagSet::default()
        },
        output_dir: out.clone(),
    };
    manifest.validate()?;

    let truth = Params::new(alpha, beta)?;
    let mut studies = Vec::with_capacity(n.len());
    for &size in &n {
        let cfg = SimConfig::new(truth, size, seed)
            .with_replications(reps)
            .with_level(level)
            .with_prior_variance(prior_variance)
            .with_t_eval(t_eval);
        let report = run_study(&cfg)?;
        println!(
            "n={size}: avg alpha_ml={:.4} beta_ml={:.4} (mse {:.4}, {:.4}) failures={}",
            report.alpha_ml.avg,
            report.beta_ml.avg,
            report.alpha_ml.mse,
            report.beta_ml.mse,
            report.convergence_failures
        );
        studies.push(report);
    }

    let report = SimulateReport {
        manifest: &manifest,
        studies: &studies,
    };
    write_text(&out.join("report.json"), &to_report_json(&report)?)?;
    write_text(&out.join("estimates.csv"), &estimates_csv(&studies))?;
    write_text(&out.join("intervals.csv"), &intervals_csv(&studies))?;
    println!(
        "wrote report.json, estimates.csv, intervals.csv to {}",
        out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct EntropyRow {
    order: f64,
    renyi: Option<f64>,
    delta: Option<f64>,
    generalized: Option<f64>,
}

#[derive(Serialize)]
struct PropertiesReport<'a> {
    manifest: &'a RunManifest,
    shape: pmad::moments::ShapeSummary,
    mtsf: f64,
    mean_deviation: f64,
    survival_at_t: f64,
    hazard_at_t: f64,
    shannon_entropy: f64,
    entropy_grid: Vec<EntropyRow>,
}

fn cmd_properties(alpha: f64, beta: f64, t_eval: f64, out: PathBuf) -> Result<(), Error> {
    let p = Params::new(alpha, beta)?;
    let manifest = RunManifest {
        command: "properties".into(),
        input_path: None,
        params: Some(p),
        flags: FlagSet {
            alpha: Some(alpha),
            beta: Some(beta),
            t_eval: Some(t_eval),
            ..FlagSet::default()
        },
        output_dir: out.clone(),
    };
    manifest.validate()?;

    let entropy_grid = [0.5, 0.75, 1.5, 2.0, 3.0]
        .into_iter()
        .map(|order| EntropyRow {
            order,
            renyi: renyi_entropy(p, order).ok(),
            delta: delta_entropy(p, order).ok(),
            generalized: generalized_entropy(p, order).ok(),
        })
        .collect();

    let shape = shape_summary(p);
    let report = PropertiesReport {
        manifest: &manifest,
        shape,
        mtsf: mtsf(p),
        mean_deviation: mean_deviation(p)?,
        survival_at_t: p.survival(t_eval)?,
        hazard_at_t: p.hazard(t_eval)?,
        shannon_entropy: shannon_entropy(p)?,
        entropy_grid,
    };
    write_text(&out.join("report.json"), &to_report_json(&report)?)?;
    println!(
        "properties at alpha={alpha} beta={beta}: mean={:.6} variance={:.6} cv={:.6}",
        report.shape.mean, report.shape.variance, report.shape.cv
    );
    println!("wrote report.json to {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct GofOutReport<'a> {
    manifest: &'a RunManifest,
    sample_size: usize,
    sample_summary: pmad::model_selection::SampleSummary,
    models: Vec<GofReport>,
}

fn cmd_gof(input: PathBuf, level: f64, t_eval: f64, out: PathBuf) -> Result<(), Error> {
    let manifest = RunManifest {
        command: "gof".into(),
        input_path: Some(input.clone()),
        params: None,
        flags: FlagSet {
            level: Some(level),
            t_eval: Some(t_eval),
            ..FlagSet::default()
        },
        output_dir: out.clone(),
    };
    manifest.validate()?;

    let d = ingest(&input)?;
    let fit = fit_mle(&d, t_eval, level)?;
    let fitted = Params::new(fit.alpha_hat, fit.beta_hat)?;
    let (alpha_m, _) = fit_maxwell_baseline(&d)?;
    let models = rank_models(vec![
        gof_report(&d, &FittedPmad { params: fitted })?,
        gof_report(&d, &FittedMaxwell { alpha: alpha_m })?,
    ]);

    for r in &models {
        println!(
            "{}: negLL={:.4} AIC={:.4} BIC={:.4} KS={:.4}",
            r.model_name, r.neg_loglik, r.aic, r.bic, r.ks
        );
    }
    let report = GofOutReport {
        manifest: &manifest,
        sample_size: d.len(),
        sample_summary: summarize(&d)?,
        models: models.clone(),
    };
    write_text(&out.join("report.json"), &to_report_json(&report)?)?;
    write_text(&out.join("gof.csv"), &gof_csv(&models))?;
    println!("wrote report.json, gof.csv to {}", out.display());
    Ok(())
}
