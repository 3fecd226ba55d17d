//! Power Maxwell distribution toolkit.
//!
//! The distribution of X = Z^{1/β} where Z is Maxwell with scale α. The
//! crate provides, in dependency order:
//!
//! - [`special`]: standalone log-gamma, regularized incomplete gamma pair,
//!   and their inverses (no external special-function crate involved);
//! - [`quad`]: adaptive Gauss-Kronrod quadrature used as the independent
//!   numeric oracle throughout;
//! - [`dist`]: density/distribution/hazard family, quantile, exact-transform
//!   sampling ([`Params`], [`Sampler`]);
//! - [`moments`]: closed-form moments, shape measures, mean deviation,
//!   generating functions, conditional moments, Bonferroni/Lorenz curves;
//! - [`lifetime`]: residual and reversed-residual life;
//! - [`entropy`]: Renyi, delta and generalized entropy families;
//! - [`mle`]: profile-likelihood maximum likelihood, observed information,
//!   asymptotic confidence intervals;
//! - [`bayes`]: gamma-prior Bayes estimation by Lindley expansion with a
//!   two-dimensional quadrature posterior-mean oracle;
//! - [`model_selection`]: information criteria, Kolmogorov-Smirnov
//!   statistic, sample summaries, model ranking, Maxwell baseline;
//! - [`simulation`]: seeded, parallel Monte Carlo estimator-quality study;
//! - [`report`]: dataset ingestion and report serialization for the CLI.

// Guards written as `!(x > 0.0)` must stay in that form: they reject NaN,
// which `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bayes;
pub mod dist;
pub mod entropy;
pub mod error;
pub mod lifetime;
pub mod mle;
pub mod model_selection;
pub mod moments;
pub mod quad;
pub mod report;
pub mod simulation;
pub mod special;

pub use dist::{Params, Sampler};
pub use error::{Error, Result};
