//! Goodness-of-fit statistics, information criteria, descriptive
//! summaries, and the Maxwell baseline fit.
//!
//! Competitor models plug in through [`CandidateModel`]; the crate ships
//! the power-Maxwell fit and its fixed-shape Maxwell specialization.

use crate::dist::Params;
use crate::error::{Error, Result};
use crate::mle::{log_likelihood, DataSet};
use serde::Serialize;

/// One fitted model's scorecard.
#[derive(Debug, Clone, Serialize)]
pub struct GofReport {
    pub model_name: String,
    pub params: Vec<f64>,
    /// Number of fitted parameters.
    pub k: usize,
    /// Sample size the criteria were computed from.
    pub n: usize,
    pub neg_loglik: f64,
    pub aic: f64,
    /// None when n ≤ k+1 (small-sample correction undefined).
    pub aicc: Option<f64>,
    pub bic: f64,
    pub ks: f64,
}

/// Location, spread and shape of a sample.
///
/// `kurtosis` is the raw ratio m₄/m₂² (the convention matched by the
/// reference tables); `kurtosis_excess` subtracts 3. Both and the
/// skewness are None for constant samples (m₂ = 0).
#[derive(Debug, Clone, Serialize)]
pub struct SampleSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
    pub skewness: Option<f64>,
    pub kurtosis: Option<f64>,
    pub kurtosis_excess: Option<f64>,
}

/// A fitted model that can enter the goodness-of-fit comparison.
pub trait CandidateModel {
    fn name(&self) -> &str;
    fn param_values(&self) -> Vec<f64>;
    fn cdf(&self, x: f64) -> Result<f64>;
    fn neg_loglik(&self, d: &DataSet) -> f64;
}

/// Two-parameter power-Maxwell candidate.
#[derive(Debug, Clone, Copy)]
pub struct FittedPmad {
    pub params: Params,
}

impl CandidateModel for FittedPmad {
    fn name(&self) -> &str {
        "PMaD"
    }

    fn param_values(&self) -> Vec<f64> {
        vec![self.params.alpha(), self.params.beta()]
    }

    fn cdf(&self, x: f64) -> Result<f64> {
        self.params.cdf(x)
    }

    fn neg_loglik(&self, d: &DataSet) -> f64 {
        -log_likelihood(d, self.params)
    }
}

/// One-parameter Maxwell candidate (shape frozen at 1).
#[derive(Debug, Clone, Copy)]
pub struct FittedMaxwell {
    pub alpha: f64,
}

impl FittedMaxwell {
    fn as_params(&self) -> Params {
        Params::new(self.alpha, 1.0).expect("positive scale")
    }
}

impl CandidateModel for FittedMaxwell {
    fn name(&self) -> &str {
        "MaD"
    }

    fn param_values(&self) -> Vec<f64> {
        vec![self.alpha]
    }

    fn cdf(&self, x: f64) -> Result<f64> {
        self.as_params().cdf(x)
    }

    fn neg_loglik(&self, d: &DataSet) -> f64 {
        -log_likelihood(d, self.as_params())
    }
}

/// Closed-form Maxwell MLE α̂ = 3n/(2Σz²) and its negative
/// log-likelihood.
pub fn fit_maxwell_baseline(d: &DataSet) -> Result<(f64, f64)> {
    if d.is_empty() {
        return Err(Error::InvalidData(
            "Maxwell fit needs at least one observation".into(),
        ));
    }
    let n = d.len() as f64;
    let sum_sq: f64 = d.values().iter().map(|x| x * x).sum();
    let alpha = 1.5 * n / sum_sq;
    let neg_ll = -log_likelihood(d, Params::new(alpha, 1.0)?);
    Ok((alpha, neg_ll))
}

/// AIC = 2k + 2·negLL; AICC = AIC + 2k(k+1)/(n−k−1) (None when
/// n ≤ k+1); BIC = k·ln n + 2·negLL.
pub fn information_criteria(neg_loglik: f64, k: usize, n: usize) -> (f64, Option<f64>, f64) {
    let kf = k as f64;
    let nf = n as f64;
    let aic = 2.0 * kf + 2.0 * neg_loglik;
    let aicc = (n > k + 1).then(|| aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0));
    let bic = kf * nf.ln() + 2.0 * neg_loglik;
    (aic, aicc, bic)
}

/// Kolmogorov-Smirnov distance between the sample and a model cdf:
/// D = max over the sorted sample of max(i/n − F(x₍ᵢ₎), F(x₍ᵢ₎) − (i−1)/n).
pub fn ks_statistic<F>(d: &DataSet, model_cdf: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if d.is_empty() {
        return Err(Error::InvalidData(
            "K-S statistic needs at least one observation".into(),
        ));
    }
    let sorted = d.sorted();
    let n = sorted.len() as f64;
    let mut dist: f64 = 0.0;
    for (idx, &x) in sorted.iter().enumerate() {
        let f = model_cdf(x)?;
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidData(format!(
                "model cdf returned {f} at {x}; must lie in [0,1]"
            )));
        }
        let i = (idx + 1) as f64;
        dist = dist.max(i / n - f).max(f - (i - 1.0) / n);
    }
    Ok(dist)
}

/// Quantile by linear interpolation of order statistics: the value at
/// fractional rank (n−1)·p.
fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

/// Five-number summary plus moment-based shape measures.
pub fn summarize(d: &DataSet) -> Result<SampleSummary> {
    if d.is_empty() {
        return Err(Error::InvalidData(
            "summary needs at least one observation".into(),
        ));
    }
    let sorted = d.sorted();
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    let central = |r: i32| sorted.iter().map(|x| (x - mean).powi(r)).sum::<f64>() / n;
    let m2 = central(2);
    let (skewness, kurtosis, kurtosis_excess) = if m2 > 0.0 {
        let raw = central(4) / (m2 * m2);
        (Some(central(3) / m2.powf(1.5)), Some(raw), Some(raw - 3.0))
    } else {
        (None, None, None)
    };
    Ok(SampleSummary {
        min: sorted[0],
        q1: quantile_type7(&sorted, 0.25),
        median: quantile_type7(&sorted, 0.5),
        mean,
        q3: quantile_type7(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        skewness,
        kurtosis,
        kurtosis_excess,
    })
}

/// Assemble one model's scorecard against a dataset.
pub fn gof_report(d: &DataSet, model: &dyn CandidateModel) -> Result<GofReport> {
    let neg_loglik = model.neg_loglik(d);
    let params = model.param_values();
    let k = params.len();
    let (aic, aicc, bic) = information_criteria(neg_loglik, k, d.len());
    Ok(GofReport {
        model_name: model.name().to_string(),
        params,
        k,
        n: d.len(),
        neg_loglik,
        aic,
        aicc,
        bic,
        ks: ks_statistic(d, |x| model.cdf(x))?,
    })
}

/// Ascending sort by AIC, ties by BIC then KS; stable, so fully tied
/// models keep input order.
pub fn rank_models(mut reports: Vec<GofReport>) -> Vec<GofReport> {
    reports.sort_by(|a, b| {
        a.aic
            .total_cmp(&b.aic)
            .then(a.bic.total_cmp(&b.bic))
            .then(a.ks.total_cmp(&b.ks))
    });
    reports
}
