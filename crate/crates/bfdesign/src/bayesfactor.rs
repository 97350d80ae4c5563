//! Closed-form Bayes factors BF01 for the directional and point-null
//! binomial tests, in log scale.
//!
//! Directional test H0: p ≤ p0 vs H1: p > p0, truncated Beta(a, b) analysis
//! priors on each side:
//!
//! ```text
//!            I_p0(a+y, b+n−y)     1 − I_p0(a, b)
//! BF01(y) = ────────────────────── · ──────────────
//!           1 − I_p0(a+y, b+n−y)      I_p0(a, b)
//! ```
//!
//! Point-null test H0: p = p0 vs H1: p ≠ p0, Beta(a, b) analysis prior
//! under H1:
//!
//! ```text
//! BF01(y) = p0^y (1−p0)^(n−y) · B(a, b) / B(a+y, b+n−y)
//! ```
//!
//! Both are exposed on integer counts; the continuous extensions in real y
//! (incomplete-beta arguments real, binomial coefficients cancel) drive the
//! root-finding in the design engine. Values saturate to ±∞ — never NaN —
//! when the posterior tail probability underflows at working precision;
//! saturated values compare correctly against any finite threshold.

use crate::error::{Error, Result};
use crate::specfun::{log_beta, reg_inc_beta_pair};

/// The hypothesis test a design is built around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestSpec {
    /// H0: p ≤ p0 versus H1: p > p0.
    OneSided { p0: f64 },
    /// H0: p = p0 versus H1: p ≠ p0.
    PointNull { p0: f64 },
}

impl TestSpec {
    pub fn one_sided(p0: f64) -> Result<Self> {
        check_p0(p0)?;
        Ok(Self::OneSided { p0 })
    }

    pub fn point_null(p0: f64) -> Result<Self> {
        check_p0(p0)?;
        Ok(Self::PointNull { p0 })
    }

    pub fn p0(&self) -> f64 {
        match *self {
            Self::OneSided { p0 } | Self::PointNull { p0 } => p0,
        }
    }
}

fn check_p0(p0: f64) -> Result<()> {
    if !p0.is_finite() || p0 <= 0.0 || p0 >= 1.0 {
        return Err(Error::Domain(format!(
            "p0 must lie strictly inside (0, 1), got {p0}"
        )));
    }
    Ok(())
}

/// Beta(a_a, b_a) hyperparameters of the analysis prior used inside the
/// Bayes factor. For the directional test the prior is truncated to each
/// hypothesis; for the point-null test it is the H1 prior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisPrior {
    a: f64,
    b: f64,
}

impl AnalysisPrior {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 || !b.is_finite() || b <= 0.0 {
            return Err(Error::Domain(format!(
                "analysis prior shapes must be finite and positive, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    /// Uniform Beta(1, 1) prior.
    pub fn flat() -> Self {
        Self { a: 1.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Directional-test evaluator with the prior-odds factor cached.
#[derive(Debug, Clone)]
pub(crate) struct OneSidedBf {
    p0: f64,
    a: f64,
    b: f64,
    /// ln[(1 − I_p0(a,b)) / I_p0(a,b)].
    ln_prior_odds_against_h0: f64,
}

impl OneSidedBf {
    pub(crate) fn new(p0: f64, prior: &AnalysisPrior) -> Result<Self> {
        check_p0(p0)?;
        let (f0, f0c) = reg_inc_beta_pair(p0, prior.a, prior.b)?;
        if f0 == 0.0 || f0c == 0.0 {
            return Err(Error::Domain(format!(
                "analysis prior Beta({}, {}) has vanishing mass on one side of p0={p0}",
                prior.a, prior.b
            )));
        }
        Ok(Self {
            p0,
            a: prior.a,
            b: prior.b,
            ln_prior_odds_against_h0: f0c.ln() - f0.ln(),
        })
    }

    /// ln BF01 on the continuous extension in y.
    pub(crate) fn ln_bf(&self, y: f64, n: f64) -> Result<f64> {
        let (f, fc) = reg_inc_beta_pair(self.p0, self.a + y, self.b + n - y)?;
        Ok(f.ln() - fc.ln() + self.ln_prior_odds_against_h0)
    }
}

/// Point-null-test evaluator with the constant factors cached.
#[derive(Debug, Clone)]
pub(crate) struct TwoSidedBf {
    ln_p0: f64,
    ln_1m_p0: f64,
    a: f64,
    b: f64,
    ln_beta_ab: f64,
}

impl TwoSidedBf {
    pub(crate) fn new(p0: f64, prior: &AnalysisPrior) -> Result<Self> {
        check_p0(p0)?;
        Ok(Self {
            ln_p0: p0.ln(),
            ln_1m_p0: (-p0).ln_1p(),
            a: prior.a,
            b: prior.b,
            ln_beta_ab: log_beta(prior.a, prior.b)?,
        })
    }

    /// ln BF01 on the continuous extension in y; strictly concave in y.
    pub(crate) fn ln_bf(&self, y: f64, n: f64) -> Result<f64> {
        Ok(y * self.ln_p0 + (n - y) * self.ln_1m_p0 + self.ln_beta_ab
            - log_beta(self.a + y, self.b + n - y)?)
    }
}

fn check_counts(y: u64, n: u64) -> Result<()> {
    if y > n {
        return Err(Error::Domain(format!(
            "y must lie in 0..=n, got y={y}, n={n}"
        )));
    }
    Ok(())
}

/// ln BF01 for the directional test H0: p ≤ p0 vs H1: p > p0 after
/// observing y successes out of n.
pub fn log_bf01_one_sided(y: u64, n: u64, p0: f64, prior: &AnalysisPrior) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("one-sided test requires n >= 1".into()));
    }
    check_counts(y, n)?;
    OneSidedBf::new(p0, prior)?.ln_bf(y as f64, n as f64)
}

/// ln BF01 for the point-null test H0: p = p0 vs H1: p ≠ p0 after observing
/// y successes out of n.
pub fn log_bf01_two_sided(y: u64, n: u64, p0: f64, prior: &AnalysisPrior) -> Result<f64> {
    check_counts(y, n)?;
    TwoSidedBf::new(p0, prior)?.ln_bf(y as f64, n as f64)
}
