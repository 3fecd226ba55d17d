//! Residual life (X - t | X > t) and reversed residual life
//! (t - X | X ≤ t) for a fixed elapsed age t.

use crate::dist::Params;
use crate::error::{Error, Result};
use serde::Serialize;

/// A parameter pair with a fixed elapsed age `t > 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResidualSpec {
    params: Params,
    t: f64,
}

impl ResidualSpec {
    pub fn new(params: Params, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "elapsed age must be positive and finite, got {t}"
            )));
        }
        Ok(Self { params, t })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    fn base_survival(&self) -> Result<f64> {
        let s = self.params.survival(self.t)?;
        if s == 0.0 {
            return Err(Error::Overflow(format!(
                "survival underflowed to 0 at age {}; residual life degenerate",
                self.t
            )));
        }
        Ok(s)
    }

    fn base_cdf(&self) -> Result<f64> {
        let c = self.params.cdf(self.t)?;
        if c == 0.0 {
            return Err(Error::Domain(format!(
                "distribution function is 0 at age {}; reversed residual life degenerate",
                self.t
            )));
        }
        Ok(c)
    }

    /// S(t + x)/S(t) for x ≥ 0.
    pub fn residual_survival(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!(
                "residual survival requires x >= 0, got {x}"
            )));
        }
        Ok(self.params.survival(self.t + x)? / self.base_survival()?)
    }

    /// f(t + x)/S(t) for x ≥ 0; integrates to 1 over x.
    pub fn residual_pdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!(
                "residual density requires x >= 0, got {x}"
            )));
        }
        Ok(self.params.pdf(self.t + x)? / self.base_survival()?)
    }

    /// Hazard of the residual life; equals the base hazard shifted to t + x.
    pub fn residual_hazard(&self, x: f64) -> Result<f64> {
        let s = self.params.survival(self.t + x)?;
        if s == 0.0 {
            return Err(Error::Overflow(format!(
                "survival underflowed to 0 at {}; residual hazard not representable",
                self.t + x
            )));
        }
        Ok(self.residual_pdf(x)? / (s / self.base_survival()?))
    }

    /// F(t - x)/F(t) for 0 ≤ x < t.
    pub fn reversed_residual_survival(&self, x: f64) -> Result<f64> {
        self.check_reversed_domain(x)?;
        Ok(self.params.cdf(self.t - x)? / self.base_cdf()?)
    }

    /// f(t - x)/F(t) for 0 ≤ x < t; integrates to 1 over [0, t).
    pub fn reversed_residual_pdf(&self, x: f64) -> Result<f64> {
        self.check_reversed_domain(x)?;
        Ok(self.params.pdf(self.t - x)? / self.base_cdf()?)
    }

    /// f(t - x)/F(t - x); the base reverse hazard evaluated at t - x.
    pub fn reversed_residual_hazard(&self, x: f64) -> Result<f64> {
        self.check_reversed_domain(x)?;
        self.params.reverse_hazard(self.t - x)
    }

    fn check_reversed_domain(&self, x: f64) -> Result<()> {
        if !(0.0..self.t).contains(&x) {
            return Err(Error::Domain(format!(
                "reversed residual life requires 0 <= x < t = {}, got {x}",
                self.t
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn spec(alpha: f64, beta: f64, t: f64) -> ResidualSpec {
        ResidualSpec::new(Params::new(alpha, beta).unwrap(), t).unwrap()
    }

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!(
            (got - want).abs() <= tol,
            "got {got}, want {want} (|diff| = {})",
            (got - want).abs()
        );
    }

    #[test]
    fn construction_rejects_bad_age() {
        let p = Params::new(1.0, 1.0).unwrap();
        assert!(ResidualSpec::new(p, 0.0).is_err());
        assert!(ResidualSpec::new(p, -1.0).is_err());
        assert!(ResidualSpec::new(p, f64::INFINITY).is_err());
    }

    #[test]
    fn residual_survival_values() {
        let rs = spec(1.0, 1.0, 1.0);
        assert_close(rs.residual_survival(0.0).unwrap(), 1.0, 1e-15);
        // S(2)/S(1), frozen from incomplete-gamma arithmetic
        assert_close(
            rs.residual_survival(1.0).unwrap(),
            0.080_382_890_923_270_33,
            1e-14,
        );
        // decreasing in x
        let mut last = 1.0;
        for x in [0.2, 0.5, 1.0, 2.0] {
            let s = rs.residual_survival(x).unwrap();
            assert!(s < last);
            last = s;
        }
        assert!(rs.residual_survival(-0.1).is_err());
    }

    #[test]
    fn residual_pdf_normalizes() {
        for (a, b, t) in [(1.0, 1.0, 1.0), (0.5, 0.75, 0.8), (2.0, 1.5, 1.4)] {
            let rs = spec(a, b, t);
            let hi = rs.params().upper_horizon().unwrap();
            let q = quad::integrate(|x| rs.residual_pdf(x).unwrap_or(0.0), 0.0, hi, 1e-9).unwrap();
            assert_close(q.value, 1.0, 1e-8);
        }
    }

    #[test]
    fn residual_pdf_matches_survival_slope() {
        let rs = spec(1.0, 1.0, 1.0);
        let h = 1e-6;
        for x in [0.3, 0.9, 1.7] {
            let slope = (rs.residual_survival(x - h).unwrap()
                - rs.residual_survival(x + h).unwrap())
                / (2.0 * h);
            assert_close(rs.residual_pdf(x).unwrap(), slope, 1e-7);
        }
    }

    #[test]
    fn residual_hazard_is_shifted_base_hazard() {
        let rs = spec(0.8, 1.2, 0.7);
        for x in [0.0, 0.4, 1.1, 2.3] {
            let want = rs.params().hazard(rs.t() + x).unwrap();
            assert_close(rs.residual_hazard(x).unwrap(), want, 1e-12 * want.max(1.0));
        }
    }

    #[test]
    fn memorylessness_fails() {
        // the distribution is not exponential: S_t(x) != S(x) off the axes
        let rs = spec(1.0, 1.0, 1.0);
        let lhs = rs.residual_survival(1.0).unwrap();
        let rhs = rs.params().survival(1.0).unwrap();
        assert!((lhs - rhs).abs() > 1e-3);
    }

    #[test]
    fn reversed_residual_survival_values() {
        let rs = spec(1.0, 1.0, 2.0);
        assert_close(rs.reversed_residual_survival(0.0).unwrap(), 1.0, 1e-15);
        // midpoint: F(1)/F(2)
        let want = rs.params().cdf(1.0).unwrap() / rs.params().cdf(2.0).unwrap();
        assert_close(rs.reversed_residual_survival(1.0).unwrap(), want, 1e-14);
        // x → t⁻ drives it to 0
        assert!(rs.reversed_residual_survival(2.0 - 1e-9).unwrap() < 1e-8);
        assert!(rs.reversed_residual_survival(2.0).is_err());
        assert!(rs.reversed_residual_survival(-0.1).is_err());
    }

    #[test]
    fn reversed_residual_pdf_normalizes() {
        for (a, b, t) in [(1.0, 1.0, 2.0), (0.5, 0.75, 1.5), (2.0, 1.5, 1.0)] {
            let rs = spec(a, b, t);
            let q = quad::integrate(|x| rs.reversed_residual_pdf(x).unwrap_or(0.0), 0.0, t, 1e-9)
                .unwrap();
            assert_close(q.value, 1.0, 1e-8);
        }
    }

    #[test]
    fn reversed_residual_hazard_identity() {
        let rs = spec(1.3, 0.9, 1.6);
        for x in [0.1, 0.8, 1.5] {
            let want = rs.params().reverse_hazard(rs.t() - x).unwrap();
            assert_close(
                rs.reversed_residual_hazard(x).unwrap(),
                want,
                1e-13 * want.max(1.0),
            );
        }
    }
}
