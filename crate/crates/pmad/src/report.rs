//! Dataset ingestion, run manifests, and report emission helpers.

use crate::dist::Params;
use crate::error::{Error, Result};
use crate::mle::DataSet;
use crate::model_selection::GofReport;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Parse a plain-text numeric file: whitespace- or comma-separated
/// positive reals, one or many per line. Blank lines and lines starting
/// with '#' are skipped; value order is preserved. The dataset label is
/// the file stem.
pub fn ingest(path: &Path) -> Result<DataSet> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let v: f64 = tok.parse().map_err(|_| {
                Error::InvalidData(format!(
                    "line {}: cannot parse {tok:?} as a number",
                    idx + 1
                ))
            })?;
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidData(format!(
                    "line {}: value {v} is not strictly positive",
                    idx + 1
                )));
            }
            values.push(v);
        }
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    DataSet::new(values, label)
}

/// Option values a run was invoked with; None marks options that do not
/// apply to the command.
#[derive(Debug, Clone, Default, Serialize)]
pub struct FlagSet {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub n: Option<Vec<usize>>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
    pub level: Option<f64>,
    pub t_eval: Option<f64>,
    pub prior_variance: Option<f64>,
    pub bayes: Option<bool>,
}

/// Everything needed to rerun a command: echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_path: Option<PathBuf>,
    pub params: Option<Params>,
    pub flags: FlagSet,
    pub output_dir: PathBuf,
}

impl RunManifest {
    /// fit/gof need an input path; properties needs explicit parameters.
    pub fn validate(&self) -> Result<()> {
        match self.command.as_str() {
            "fit" | "gof" if self.input_path.is_none() => Err(Error::InvalidData(format!(
                "command {} requires an input path",
                self.command
            ))),
            "properties" if self.params.is_none() => Err(Error::InvalidData(
                "command properties requires parameters".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Round to `digits` significant decimal digits.
pub fn round_sig(v: f64, digits: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let mag = v.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - mag);
    (v * factor).round() / factor
}

/// Round every float in a JSON tree to 10 significant digits; integers
/// pass through untouched.
pub fn round_json_numbers(value: &mut serde_json::Value) {
    use serde_json::Value;
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f, 10)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json_numbers),
        Value::Object(map) => map.values_mut().for_each(round_json_numbers),
        _ => {}
    }
}

/// Serialize with floats at 10 significant digits, pretty-printed.
pub fn to_report_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v =
        serde_json::to_value(value).map_err(|e| Error::Io(format!("serialization failed: {e}")))?;
    round_json_numbers(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| Error::Io(format!("serialization failed: {e}")))
}

/// Empirical vs fitted distribution function at each sorted data point:
/// columns x, empirical_f (i/n), fitted_f.
pub fn ecdf_csv(d: &DataSet, p: Params) -> Result<String> {
    let sorted = d.sorted();
    let n = sorted.len() as f64;
    let mut out = String::from("x,empirical_f,fitted_f\n");
    for (i, &x) in sorted.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            crate::simulation::sig10(x),
            crate::simulation::sig10((i + 1) as f64 / n),
            crate::simulation::sig10(p.cdf(x)?),
        ));
    }
    Ok(out)
}

/// Theoretical quantiles at (i-1/2)/n against the order statistics:
/// columns theoretical, empirical.
pub fn qq_csv(d: &DataSet, p: Params) -> Result<String> {
    let sorted = d.sorted();
    let n = sorted.len() as f64;
    let mut out = String::from("theoretical,empirical\n");
    for (i, &x) in sorted.iter().enumerate() {
        let u = (i as f64 + 0.5) / n;
        out.push_str(&format!(
            "{},{}\n",
            crate::simulation::sig10(p.quantile(u)?),
            crate::simulation::sig10(x),
        ));
    }
    Ok(out)
}

/// Ranked model comparison, one row per fitted model. Empty cells mark
/// a missing second parameter or an undefined small-sample correction.
pub fn gof_csv(reports: &[GofReport]) -> String {
    let mut out = String::from("model,alpha_hat,beta_hat,neg_loglik,aic,aicc,bic,ks\n");
    for r in reports {
        let alpha = r
            .params
            .first()
            .map(|v| crate::simulation::sig10(*v))
            .unwrap_or_default();
        let beta = r
            .params
            .get(1)
            .map(|v| crate::simulation::sig10(*v))
            .unwrap_or_default();
        let aicc = r.aicc.map(crate::simulation::sig10).unwrap_or_default();
        out.push_str(&format!(
            "{},{alpha},{beta},{},{},{aicc},{},{}\n",
            r.model_name,
            crate::simulation::sig10(r.neg_loglik),
            crate::simulation::sig10(r.aic),
            crate::simulation::sig10(r.bic),
            crate::simulation::sig10(r.ks),
        ));
    }
    out
}

/// Write a text file, creating parent directories as needed.
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Error::Io(format!("{}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
