//! Distribution-level properties: normalization, derivative consistency,
//! the power transform to the parent law, and stochastic ordering.

use pmad::mle::DataSet;
use pmad::model_selection::ks_statistic;
use pmad::quad;
use pmad::special::reg_lower_gamma;
use pmad::{Params, Sampler};
use proptest::prelude::*;

const GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 5.0];

fn param_grid() -> impl Iterator<Item = Params> {
    GRID.into_iter()
        .flat_map(|a| GRID.into_iter().map(move |b| Params::new(a, b).unwrap()))
}

// beta = 1 is the parent law: (4/sqrt(pi)) a^{3/2} x^2 e^{-a x^2}
#[test]
fn unit_shape_reduces_to_parent_density() {
    let norm = 4.0 / std::f64::consts::PI.sqrt();
    for alpha in GRID {
        let p = Params::new(alpha, 1.0).unwrap();
        for x in [0.05, 0.3, 0.8, 1.0, 1.7, 3.0] {
            let direct = norm * alpha.powf(1.5) * x * x * (-alpha * x * x).exp();
            let got = p.pdf(x).unwrap();
            assert!(
                (got - direct).abs() <= 1e-14 * direct,
                "alpha={alpha} x={x}: {got} vs {direct}"
            );
        }
    }
}

#[test]
fn density_integrates_to_one() {
    for p in param_grid() {
        let hi = p.quantile(1.0 - 1e-12).unwrap();
        let mass = quad::integrate(|x| p.pdf(x).unwrap_or(0.0), 0.0, hi, 1e-10)
            .unwrap()
            .value;
        assert!(
            (mass - 1.0).abs() < 1e-8,
            "mass {mass} at alpha={} beta={}",
            p.alpha(),
            p.beta()
        );
    }
}

#[test]
fn density_is_distribution_derivative() {
    for p in param_grid() {
        for u in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let x = p.quantile(u).unwrap();
            let h = (x * 1e-5).max(1e-7);
            let diff = (p.cdf(x + h).unwrap() - p.cdf(x - h).unwrap()) / (2.0 * h);
            let f = p.pdf(x).unwrap();
            assert!(
                (diff - f).abs() <= 1e-6 * (1.0 + f),
                "d cdf/dx = {diff} vs pdf = {f} at x={x}, alpha={} beta={}",
                p.alpha(),
                p.beta()
            );
        }
    }
}

// X^beta has the parent distribution with the same scale.
#[test]
fn power_transform_recovers_parent() {
    let p = Params::new(0.8, 1.4).unwrap();
    let n = 4000usize;
    let draws = Sampler::new(p, 2024).sample_n(n);
    let transformed: Vec<f64> = draws.iter().map(|x| x.powf(p.beta())).collect();
    let d = DataSet::new(transformed, "power").unwrap();
    let ks = ks_statistic(&d, |z| reg_lower_gamma(1.5, p.alpha() * z * z)).unwrap();
    let critical = 1.63 / (n as f64).sqrt();
    assert!(ks < critical, "ks {ks} >= {critical}");
}

proptest! {
    #[test]
    fn quantile_round_trip(
        la in -3.0f64..3.0,
        lb in -3.0f64..3.0,
        u in 1e-6f64..0.999999,
    ) {
        let p = Params::new(la.exp(), lb.exp()).unwrap();
        let x = p.quantile(u).unwrap();
        let back = p.cdf(x).unwrap();
        prop_assert!(
            (back - u).abs() <= 1e-10,
            "u={u} -> x={x} -> {back} at alpha={} beta={}",
            p.alpha(),
            p.beta()
        );
    }

    // larger scale parameter concentrates mass at smaller x
    #[test]
    fn distribution_dominance_in_scale(
        a1 in 0.05f64..5.0,
        bump in 0.01f64..10.0,
        beta in 0.2f64..4.0,
        u in 0.001f64..0.999,
    ) {
        let lo = Params::new(a1, beta).unwrap();
        let hi = Params::new(a1 + bump, beta).unwrap();
        let x = lo.quantile(u).unwrap();
        prop_assert!(hi.cdf(x).unwrap() >= lo.cdf(x).unwrap());
    }

    // log f(a1)/f(a2) = 1.5 ln(a1/a2) - (a1-a2) x^{2 beta} increases in x
    // when a1 < a2, so the density ratio is monotone
    #[test]
    fn likelihood_ratio_monotone_for_shared_shape(
        a1 in 0.05f64..5.0,
        bump in 0.01f64..10.0,
        beta in 0.2f64..4.0,
        u1 in 0.01f64..0.98,
        du in 0.001f64..0.5,
    ) {
        let p1 = Params::new(a1, beta).unwrap();
        let p2 = Params::new(a1 + bump, beta).unwrap();
        let x1 = p1.quantile(u1).unwrap();
        let x2 = p1.quantile((u1 + du).min(0.995)).unwrap();
        let r1 = p1.log_pdf(x1).unwrap() - p2.log_pdf(x1).unwrap();
        let r2 = p1.log_pdf(x2).unwrap() - p2.log_pdf(x2).unwrap();
        prop_assert!(r2 >= r1 - 1e-12, "ratio not monotone: {r1} -> {r2}");
    }
}
