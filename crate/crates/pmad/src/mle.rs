//! Maximum-likelihood estimation by profile reduction.
//!
//! The scale score 3n/(2α) - Σx^{2β} = 0 is linear in 1/α, so the scale
//! profile α̂(β) = 3n/(2Σx^{2β}) is exact and the fit collapses to a
//! one-dimensional root solve of the profiled shape score
//!
//! ```text
//! g(β) = n/β - 3n Σx^{2β}ln x / Σx^{2β} + 3Σln x
//! ```
//!
//! g is strictly decreasing (its derivative is -n/β² minus a Cauchy-Schwarz
//! nonnegative term), g → +∞ as β → 0⁺, and g → 3Σln(xᵢ/x_max) < 0 as
//! β → ∞ for non-degenerate data, so a bracketed Newton iteration cannot
//! miss the unique root. All-equal samples have no root and are reported
//! through the `converged` flag.

use crate::dist::Params;
use crate::error::{Error, Result};
use crate::moments::mtsf;
use crate::special::inv_std_normal_cdf;
use serde::Serialize;

/// √(π²/2 - 4)/2: ratio between the sd of ln X and 1/β, used to seed the
/// shape search by moment matching on the log scale.
const LOG_SD_FACTOR: f64 = 0.483_425_743_679_794;

/// An ordered sample of positive observations with a provenance label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataSet {
    values: Vec<f64>,
    label: String,
}

impl DataSet {
    /// Accepts any sample of strictly positive, finite values (possibly
    /// empty; individual operations state their own size requirements).
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidData(format!(
                    "observation {} is {v}; all values must be positive and finite",
                    i + 1
                )));
            }
        }
        Ok(Self {
            values,
            label: label.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ascending copy of the sample.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Σx^{2β}, Σx^{2β}ln x, Σx^{2β}(ln x)², Σx^{2β}(ln x)³ in one pass.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PowerSums {
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

pub(crate) fn power_sums(values: &[f64], beta: f64) -> PowerSums {
    let mut s = PowerSums {
        t0: 0.0,
        t1: 0.0,
        t2: 0.0,
        t3: 0.0,
    };
    for &x in values {
        let lx = x.ln();
        let w = (2.0 * beta * lx).exp();
        s.t0 += w;
        s.t1 += w * lx;
        s.t2 += w * lx * lx;
        s.t3 += w * lx * lx * lx;
    }
    s
}

pub(crate) fn sum_ln(values: &[f64]) -> f64 {
    values.iter().map(|x| x.ln()).sum()
}

/// Sample log-likelihood
/// l = n ln 4 - (n/2) ln π + (3n/2) ln α + n ln β - αΣx^{2β} + (3β-1)Σln x.
pub fn log_likelihood(d: &DataSet, p: Params) -> f64 {
    let n = d.len() as f64;
    let t0 = power_sums(d.values(), p.beta()).t0;
    n * (4.0f64.ln() - 0.5 * std::f64::consts::PI.ln())
        + 1.5 * n * p.alpha().ln()
        + n * p.beta().ln()
        - p.alpha() * t0
        + (3.0 * p.beta() - 1.0) * sum_ln(d.values())
}

/// Analytic score vector (∂l/∂α, ∂l/∂β) at `p`.
pub fn score(d: &DataSet, p: Params) -> (f64, f64) {
    let n = d.len() as f64;
    let s = power_sums(d.values(), p.beta());
    (
        1.5 * n / p.alpha() - s.t0,
        n / p.beta() - 2.0 * p.alpha() * s.t1 + 3.0 * sum_ln(d.values()),
    )
}

/// Exact scale profile α̂(β) = 3n/(2Σx^{2β}).
pub fn profile_alpha(d: &DataSet, beta: f64) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::InvalidData(
            "profile estimate needs at least one observation".into(),
        ));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain(format!("shape must be positive, got {beta}")));
    }
    let t0 = power_sums(d.values(), beta).t0;
    Ok(1.5 * d.len() as f64 / t0)
}

/// Profiled shape score g(β); its unique zero is the shape MLE.
pub fn profiled_score(d: &DataSet, beta: f64) -> f64 {
    let n = d.len() as f64;
    let s = power_sums(d.values(), beta);
    n / beta - 3.0 * n * s.t1 / s.t0 + 3.0 * sum_ln(d.values())
}

/// Observed information J = -∇²l at `p` (2x2, symmetric).
pub fn observed_information(d: &DataSet, p: Params) -> [[f64; 2]; 2] {
    let n = d.len() as f64;
    let s = power_sums(d.values(), p.beta());
    let j_aa = 1.5 * n / (p.alpha() * p.alpha());
    let j_ab = 2.0 * s.t1;
    let j_bb = n / (p.beta() * p.beta()) + 4.0 * p.alpha() * s.t2;
    [[j_aa, j_ab], [j_ab, j_bb]]
}

/// Point estimates, curvature, intervals and invariance-derived
/// reliability quantities from one fit.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub loglik: f64,
    /// Observed information (negative Hessian) at the optimum.
    pub info_matrix: [[f64; 2]; 2],
    /// None when the observed information is numerically singular.
    pub var_alpha: Option<f64>,
    pub var_beta: Option<f64>,
    pub ci_alpha: Option<(f64, f64)>,
    pub ci_beta: Option<(f64, f64)>,
    /// Confidence level the stored intervals were computed at.
    pub level: f64,
    /// Evaluation age for the reliability quantities below.
    pub t_eval: f64,
    pub mttf_hat: f64,
    pub r_hat_at_t: f64,
    pub h_hat_at_t: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Maximum-likelihood fit via the profile path.
///
/// Needs at least 3 observations; `t_eval > 0` is the age at which the
/// survival and hazard estimates are reported; `level ∈ (0, 1)` sets the
/// confidence intervals. Degenerate (all-equal) samples return with
/// `converged = false` and the best iterate instead of an error.
pub fn fit_mle(d: &DataSet, t_eval: f64, level: f64) -> Result<FitResult> {
    if d.len() < 3 {
        return Err(Error::InvalidData(format!(
            "need at least 3 observations for a two-parameter fit, got {}",
            d.len()
        )));
    }
    if !(t_eval > 0.0) || !t_eval.is_finite() {
        return Err(Error::Domain(format!(
            "evaluation age must be positive, got {t_eval}"
        )));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }

    let (beta_hat, converged, iterations) = solve_shape(d);
    let alpha_hat = profile_alpha(d, beta_hat)?;
    let p = Params::new(alpha_hat, beta_hat)?;
    finish_fit(d, p, t_eval, level, converged, iterations)
}

/// Newton-with-bracket root solve of the profiled score.
///
/// Returns (β, converged, iterations); non-convergence means no sign
/// change was found (degenerate sample) or the iteration cap was hit.
fn solve_shape(d: &DataSet) -> (f64, bool, usize) {
    let values = d.values();
    let n = values.len() as f64;
    let mean_ln = sum_ln(values) / n;
    let var_ln = values
        .iter()
        .map(|x| {
            let e = x.ln() - mean_ln;
            e * e
        })
        .sum::<f64>()
        / n;
    if var_ln == 0.0 {
        // all observations equal: g(β) = n/β > 0 everywhere, no root
        return (1.0, false, 0);
    }
    let beta0 = (LOG_SD_FACTOR / var_ln.sqrt()).clamp(1e-6, 1e6);

    let mut iterations = 0usize;
    // expand a sign-change bracket [lo, hi] around the seed
    let mut lo = beta0;
    let mut g_lo = profiled_score(d, lo);
    while g_lo <= 0.0 && lo > 1e-12 {
        lo *= 0.5;
        g_lo = profiled_score(d, lo);
        iterations += 1;
        if iterations > 200 {
            return (lo, false, iterations);
        }
    }
    let mut hi = (2.0 * lo).max(beta0);
    let mut g_hi = profiled_score(d, hi);
    while g_hi >= 0.0 && hi < 1e12 {
        hi *= 2.0;
        g_hi = profiled_score(d, hi);
        iterations += 1;
        if iterations > 200 {
            return (hi, false, iterations);
        }
    }
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return (0.5 * (lo + hi), false, iterations);
    }

    // Newton on the strictly decreasing g, bisecting when a step escapes
    let mut beta = beta0.clamp(lo, hi);
    for _ in 0..200 {
        iterations += 1;
        let s = power_sums(values, beta);
        let g = n / beta - 3.0 * n * s.t1 / s.t0 + 3.0 * sum_ln(values);
        if g > 0.0 {
            lo = beta;
        } else {
            hi = beta;
        }
        if g.abs() < 1e-11 {
            return (beta, true, iterations);
        }
        // g'(β) = -n/β² - 6n(t2 t0 - t1²)/t0²
        let gp = -n / (beta * beta) - 6.0 * n * (s.t2 * s.t0 - s.t1 * s.t1) / (s.t0 * s.t0);
        let mut next = beta - g / gp;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - beta).abs() <= beta * 1e-15 {
            return (next, true, iterations);
        }
        beta = next;
    }
    (beta, false, iterations)
}

fn finish_fit(
    d: &DataSet,
    p: Params,
    t_eval: f64,
    level: f64,
    converged: bool,
    iterations: usize,
) -> Result<FitResult> {
    let info = observed_information(d, p);
    let det = info[0][0] * info[1][1] - info[0][1] * info[1][0];
    let (var_alpha, var_beta) = if converged && det > 0.0 {
        (Some(info[1][1] / det), Some(info[0][0] / det))
    } else {
        (None, None)
    };
    let z = inv_std_normal_cdf(1.0 - 0.5 * (1.0 - level))?;
    let ci = |center: f64, var: Option<f64>| {
        var.map(|v| {
            let half = z * v.sqrt();
            (center - half, center + half)
        })
    };
    Ok(FitResult {
        alpha_hat: p.alpha(),
        beta_hat: p.beta(),
        loglik: log_likelihood(d, p),
        info_matrix: info,
        var_alpha,
        var_beta,
        ci_alpha: ci(p.alpha(), var_alpha),
        ci_beta: ci(p.beta(), var_beta),
        level,
        t_eval,
        mttf_hat: mtsf(p),
        r_hat_at_t: p.survival(t_eval)?,
        h_hat_at_t: p.hazard(t_eval)?,
        converged,
        iterations,
    })
}

/// Recompute the two confidence intervals from a stored fit at a new level.
pub fn confidence_interval(fit: &FitResult, level: f64) -> Result<((f64, f64), (f64, f64))> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    let (va, vb) = match (fit.var_alpha, fit.var_beta) {
        (Some(va), Some(vb)) => (va, vb),
        _ => {
            return Err(Error::Singular(
                "fit carries no variances (information singular or fit not converged)".into(),
            ))
        }
    };
    let z = inv_std_normal_cdf(1.0 - 0.5 * (1.0 - level))?;
    Ok((
        (fit.alpha_hat - z * va.sqrt(), fit.alpha_hat + z * va.sqrt()),
        (fit.beta_hat - z * vb.sqrt(), fit.beta_hat + z * vb.sqrt()),
    ))
}
