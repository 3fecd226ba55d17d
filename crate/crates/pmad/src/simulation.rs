//! Monte-Carlo study of estimator quality: averages, mean square errors
//! and confidence-interval widths across repeated fits.
//!
//! Replications are independent and run in parallel; each one draws from
//! its own counter-derived substream of the master seed, and aggregation
//! folds the ordered results sequentially, so a report is bit-identical
//! for a fixed config regardless of thread count.

use crate::bayes::{elicit_hyperparams, lindley_point_estimates};
use crate::dist::{Params, Sampler};
use crate::error::{Error, Result};
use crate::mle::{fit_mle, DataSet};
use crate::moments::mtsf;
use rayon::prelude::*;
use serde::Serialize;

/// Study design: data-generating parameters plus estimation settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub true_params: Params,
    /// Per-replication sample size.
    pub n: usize,
    pub replications: usize,
    pub seed: u64,
    /// Confidence level for the interval columns.
    pub level: f64,
    /// Variance of the elicited gamma priors (centered at the truth).
    pub prior_variance: f64,
    /// Age at which survival and hazard estimates are evaluated.
    pub t_eval: f64,
}

impl SimConfig {
    /// Defaults: 5000 replications, level 0.95, prior variance 0.5,
    /// t_eval 1.0.
    pub fn new(true_params: Params, n: usize, seed: u64) -> Self {
        Self {
            true_params,
            n,
            replications: 5000,
            seed,
            level: 0.95,
            prior_variance: 0.5,
            t_eval: 1.0,
        }
    }

    pub fn with_replications(mut self, replications: usize) -> Self {
        self.replications = replications;
        self
    }

    pub fn with_level(mut self, level: f64) -> Self {
        self.level = level;
        self
    }

    pub fn with_prior_variance(mut self, prior_variance: f64) -> Self {
        self.prior_variance = prior_variance;
        self
    }

    pub fn with_t_eval(mut self, t_eval: f64) -> Self {
        self.t_eval = t_eval;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.replications < 100 {
            return Err(Error::Domain(format!(
                "study needs at least 100 replications, got {}",
                self.replications
            )));
        }
        if self.n < 3 {
            return Err(Error::Domain(format!(
                "per-replication sample size must be at least 3, got {}",
                self.n
            )));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::Domain(format!(
                "confidence level must lie in (0, 1), got {}",
                self.level
            )));
        }
        if !(self.prior_variance > 0.0) || !self.prior_variance.is_finite() {
            return Err(Error::Domain(format!(
                "prior variance must be positive, got {}",
                self.prior_variance
            )));
        }
        if !(self.t_eval > 0.0) || !self.t_eval.is_finite() {
            return Err(Error::Domain(format!(
                "evaluation age must be positive, got {}",
                self.t_eval
            )));
        }
        Ok(())
    }
}

/// Average of an estimator across replications and its mean square
/// error against the true value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateQuality {
    pub avg: f64,
    pub mse: f64,
}

/// True values the per-replication estimates are scored against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruthValues {
    pub alpha: f64,
    pub beta: f64,
    pub mttf: f64,
    pub survival_t: f64,
    pub hazard_t: f64,
}

/// Aggregated study output. Averages and MSEs cover only converged
/// replications; the failure count is disclosed alongside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub truth: TruthValues,
    pub alpha_ml: EstimateQuality,
    pub beta_ml: EstimateQuality,
    pub mttf_ml: EstimateQuality,
    pub survival_ml: EstimateQuality,
    pub hazard_ml: EstimateQuality,
    pub alpha_bayes: EstimateQuality,
    pub beta_bayes: EstimateQuality,
    /// Averages of the per-replication interval endpoints.
    pub ci_alpha_avg: (f64, f64),
    pub ci_beta_avg: (f64, f64),
    /// Average confidence-interval lengths.
    pub acl_alpha: f64,
    pub acl_beta: f64,
    pub convergence_failures: usize,
    pub replications_used: usize,
}

struct RepOutcome {
    alpha: f64,
    beta: f64,
    mttf: f64,
    survival: f64,
    hazard: f64,
    alpha_bl: f64,
    beta_bl: f64,
    ci_alpha: (f64, f64),
    ci_beta: (f64, f64),
}

fn one_replication(
    cfg: &SimConfig,
    rep: usize,
    prior: &crate::bayes::GammaPrior,
) -> Option<RepOutcome> {
    let data = Sampler::substream(cfg.true_params, cfg.seed, rep as u64).sample_n(cfg.n);
    let d = DataSet::new(data, "").ok()?;
    let fit = fit_mle(&d, cfg.t_eval, cfg.level).ok()?;
    if !fit.converged {
        return None;
    }
    let p = Params::new(fit.alpha_hat, fit.beta_hat).ok()?;
    let (alpha_bl, beta_bl) = lindley_point_estimates(&d, p, prior).ok()?;
    Some(RepOutcome {
        alpha: fit.alpha_hat,
        beta: fit.beta_hat,
        mttf: fit.mttf_hat,
        survival: fit.r_hat_at_t,
        hazard: fit.h_hat_at_t,
        alpha_bl,
        beta_bl,
        ci_alpha: fit.ci_alpha?,
        ci_beta: fit.ci_beta?,
    })
}

/// Run the full study: sample, fit, derive, aggregate.
///
/// Aborts (error) when more than 20% of replications fail to converge;
/// below that threshold failures are excluded from the averages and
/// reported in `convergence_failures`.
pub fn run_study(cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    let p = cfg.true_params;
    let truth = TruthValues {
        alpha: p.alpha(),
        beta: p.beta(),
        mttf: mtsf(p),
        survival_t: p.survival(cfg.t_eval)?,
        hazard_t: p.hazard(cfg.t_eval)?,
    };
    let prior = elicit_hyperparams(p.alpha(), p.beta(), cfg.prior_variance)?;

    let outcomes: Vec<Option<RepOutcome>> = (0..cfg.replications)
        .into_par_iter()
        .map(|rep| one_replication(cfg, rep, &prior))
        .collect();

    let failures = outcomes.iter().filter(|o| o.is_none()).count();
    if failures * 5 > cfg.replications {
        return Err(Error::NoConvergence(format!(
            "{failures} of {} replications failed to converge; study aborted",
            cfg.replications
        )));
    }
    let used = cfg.replications - failures;
    let m = used as f64;

    let mut acc = Accumulator::default();
    for rep in outcomes.iter().flatten() {
        acc.add(rep, &truth);
    }
    Ok(SimReport {
        config: *cfg,
        truth,
        alpha_ml: acc.alpha.finish(m),
        beta_ml: acc.beta.finish(m),
        mttf_ml: acc.mttf.finish(m),
        survival_ml: acc.survival.finish(m),
        hazard_ml: acc.hazard.finish(m),
        alpha_bayes: acc.alpha_bl.finish(m),
        beta_bayes: acc.beta_bl.finish(m),
        ci_alpha_avg: (acc.ci_a_lo / m, acc.ci_a_hi / m),
        ci_beta_avg: (acc.ci_b_lo / m, acc.ci_b_hi / m),
        acl_alpha: (acc.ci_a_hi - acc.ci_a_lo) / m,
        acl_beta: (acc.ci_b_hi - acc.ci_b_lo) / m,
        convergence_failures: failures,
        replications_used: used,
    })
}

#[derive(Default)]
struct MomentAcc {
    sum: f64,
    sum_sq_err: f64,
}

impl MomentAcc {
    fn add(&mut self, value: f64, truth: f64) {
        self.sum += value;
        let e = value - truth;
        self.sum_sq_err += e * e;
    }

    fn finish(&self, m: f64) -> EstimateQuality {
        EstimateQuality {
            avg: self.sum / m,
            mse: self.sum_sq_err / m,
        }
    }
}

#[derive(Default)]
struct Accumulator {
    alpha: MomentAcc,
    beta: MomentAcc,
    mttf: MomentAcc,
    survival: MomentAcc,
    hazard: MomentAcc,
    alpha_bl: MomentAcc,
    beta_bl: MomentAcc,
    ci_a_lo: f64,
    ci_a_hi: f64,
    ci_b_lo: f64,
    ci_b_hi: f64,
}

impl Accumulator {
    fn add(&mut self, rep: &RepOutcome, truth: &TruthValues) {
        self.alpha.add(rep.alpha, truth.alpha);
        self.beta.add(rep.beta, truth.beta);
        self.mttf.add(rep.mttf, truth.mttf);
        self.survival.add(rep.survival, truth.survival_t);
        self.hazard.add(rep.hazard, truth.hazard_t);
        self.alpha_bl.add(rep.alpha_bl, truth.alpha);
        self.beta_bl.add(rep.beta_bl, truth.beta);
        self.ci_a_lo += rep.ci_alpha.0;
        self.ci_a_hi += rep.ci_alpha.1;
        self.ci_b_lo += rep.ci_beta.0;
        self.ci_b_hi += rep.ci_beta.1;
    }
}

/// Format a value to 10 significant digits for table output.
pub(crate) fn sig10(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let dec = (9 - mag).max(0) as usize;
    format!("{:.*}", dec, v)
}

/// Estimate-quality table: one `average` and one `mse` line per report,
/// estimate columns in the order scale-ML, shape-ML, MTTF, R(t), H(t),
/// scale-Bayes, shape-Bayes.
pub fn estimates_csv(reports: &[SimReport]) -> String {
    let mut out =
        String::from("n,alpha,beta,statistic,alpha_ml,beta_ml,mtsf,r_t,h_t,alpha_bl,beta_bl\n");
    for r in reports {
        let prefix = format!(
            "{},{},{}",
            r.config.n,
            sig10(r.truth.alpha),
            sig10(r.truth.beta)
        );
        out.push_str(&format!(
            "{prefix},average,{},{},{},{},{},{},{}\n",
            sig10(r.alpha_ml.avg),
            sig10(r.beta_ml.avg),
            sig10(r.mttf_ml.avg),
            sig10(r.survival_ml.avg),
            sig10(r.hazard_ml.avg),
            sig10(r.alpha_bayes.avg),
            sig10(r.beta_bayes.avg),
        ));
        out.push_str(&format!(
            "{prefix},mse,{},{},{},{},{},{},{}\n",
            sig10(r.alpha_ml.mse),
            sig10(r.beta_ml.mse),
            sig10(r.mttf_ml.mse),
            sig10(r.survival_ml.mse),
            sig10(r.hazard_ml.mse),
            sig10(r.alpha_bayes.mse),
            sig10(r.beta_bayes.mse),
        ));
    }
    out
}

/// Interval table: average endpoints and lengths per report, columns in
/// the order scale-lower/upper/length, shape-lower/upper/length.
pub fn intervals_csv(reports: &[SimReport]) -> String {
    let mut out = String::from(
        "n,alpha,beta,alpha_lower,alpha_upper,acl_alpha,beta_lower,beta_upper,acl_beta\n",
    );
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.config.n,
            sig10(r.truth.alpha),
            sig10(r.truth.beta),
            sig10(r.ci_alpha_avg.0),
            sig10(r.ci_alpha_avg.1),
            sig10(r.acl_alpha),
            sig10(r.ci_beta_avg.0),
            sig10(r.ci_beta_avg.1),
            sig10(r.acl_beta),
        ));
    }
    out
}
