//! Exact design analysis for binomial experiments evaluated with Bayes
//! factors.
//!
//! The crate computes the operating characteristics of a planned binomial
//! experiment — Bayesian power, Bayesian type-I error, the probability of
//! compelling evidence for the null, and the probability of indecisive
//! evidence — exactly, by summing prior-predictive probabilities over the
//! outcome sets where the Bayes factor crosses an evidence threshold. On
//! top of that sit a minimal-sample-size search that is robust to the
//! oscillation of binomial operating characteristics in n, a retrospective
//! threshold search, and a seeded Monte Carlo oracle that cross-validates
//! the exact engine.
//!
//! Two hypothesis tests are supported, both on a success probability p:
//!
//! * directional: H0: p ≤ p0 versus H1: p > p0, with truncated Beta
//!   analysis priors on each side;
//! * point null: H0: p = p0 versus H1: p ≠ p0, with a Beta analysis prior
//!   under H1.
//!
//! Inner loops are data-parallel and run on rayon when the `parallel`
//! feature (default) is enabled. Results are bit-identical between the
//! parallel and sequential paths: floating-point reductions always use the
//! same fixed chunking and fold order, and Monte Carlo runs reduce integer
//! counts over deterministic per-chunk streams.

mod error;

pub mod bayesfactor;
pub mod design;
pub mod mc;
pub mod predictive;
pub mod priors;
pub mod rng;
pub mod runtime;
pub mod specfun;

pub(crate) mod exec;
#[cfg(test)]
pub(crate) mod testutil;

pub use bayesfactor::{log_bf01_one_sided, log_bf01_two_sided, AnalysisPrior, TestSpec};
pub use design::{
    acceptance_set, find_sample_size, find_threshold, operating_characteristics,
    region_probability, rejection_set, DesignConfig, Metric, OperatingCharacteristics, Region,
    SampleSizeQuery,
};
pub use error::{Error, Result};
pub use mc::{mc_probability, Hypothesis, McEstimate, McEvent};
pub use predictive::{prior_predictive_logpmf, prior_predictive_pmf, PredictiveSpec};
pub use priors::{
    mean_centered_b, mode_centered_a, scale_informativeness, DesignPrior, PointMass, TruncatedBeta,
};
