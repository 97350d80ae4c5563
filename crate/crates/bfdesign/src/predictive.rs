//! Exact prior-predictive probability mass functions of the success count
//! under truncated-Beta or point-mass priors.
//!
//! For a truncated Beta(a, b) prior on [l, u] the pmf of y successes out of
//! n is
//!
//! ```text
//! C(n,y) · B(a+y, b+n−y) · [I_u(a+y, b+n−y) − I_l(a+y, b+n−y)]
//! ─────────────────────────────────────────────────────────────
//!            B(a, b) · [I_u(a, b) − I_l(a, b)]
//! ```
//!
//! and for a point mass at p it reduces to the binomial pmf. Everything is
//! evaluated in log space so sample sizes up to ~1e5 stay clear of
//! underflow.

use crate::error::{Error, Result};
use crate::priors::DesignPrior;
use crate::specfun::{inc_beta_mass, ln_binom, log_beta};

/// Sample size paired with the design prior to marginalize over.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveSpec {
    n: u64,
    prior: DesignPrior,
}

impl PredictiveSpec {
    pub fn new(n: u64, prior: DesignPrior) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("sample size n must be at least 1".into()));
        }
        Ok(Self { n, prior })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn prior(&self) -> &DesignPrior {
        &self.prior
    }
}

/// Log prior-predictive mass of observing y successes; −∞ where the mass
/// underflows.
pub fn prior_predictive_logpmf(spec: &PredictiveSpec, y: u64) -> Result<f64> {
    if y > spec.n {
        return Err(Error::Domain(format!(
            "y must lie in 0..=n, got y={y} with n={}",
            spec.n
        )));
    }
    let n = spec.n;
    match &spec.prior {
        DesignPrior::PointMass(pm) => {
            let p = pm.p();
            Ok(ln_binom(n, y) + y as f64 * p.ln() + (n - y) as f64 * (-p).ln_1p())
        }
        DesignPrior::TruncatedBeta(tb) => {
            let a = tb.a();
            let b = tb.b();
            let shifted_mass =
                inc_beta_mass(tb.lower(), tb.upper(), a + y as f64, b + (n - y) as f64)?;
            if shifted_mass == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            Ok(
                ln_binom(n, y) + log_beta(a + y as f64, b + (n - y) as f64)? - tb.ln_beta()
                    + shifted_mass.ln()
                    - tb.mass().ln(),
            )
        }
    }
}

/// Prior-predictive mass of observing y successes out of n.
pub fn prior_predictive_pmf(spec: &PredictiveSpec, y: u64) -> Result<f64> {
    Ok(prior_predictive_logpmf(spec, y)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priors::TruncatedBeta;
    use crate::testutil::{adaptive_simpson, binomial_pmf};

    fn spec(n: u64, prior: &str) -> PredictiveSpec {
        PredictiveSpec::new(n, prior.parse().unwrap()).unwrap()
    }

    #[test]
    fn flat_prior_gives_uniform_predictive() {
        let s = spec(3, "beta:1,1");
        for y in 0..=3 {
            assert!((prior_predictive_pmf(&s, y).unwrap() - 0.25).abs() < 1e-13);
        }
    }

    #[test]
    fn point_prior_reduces_to_binomial() {
        let s = spec(2, "point:0.4");
        assert!((prior_predictive_pmf(&s, 1).unwrap() - 0.48).abs() < 1e-13);
        assert!((prior_predictive_logpmf(&s, 0).unwrap() - 0.36f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn truncated_single_trial_matches_prior_mean() {
        // P(y = 1 | n = 1) is the prior mean of p: here 0.6 on [0.2, 1].
        let s = spec(1, "beta:1,1,0.2,1");
        assert!((prior_predictive_pmf(&s, 1).unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn log_and_linear_scales_agree() {
        let s = spec(3, "beta:1,1");
        assert!((prior_predictive_logpmf(&s, 1).unwrap() - 0.25f64.ln()).abs() < 1e-12);
        for y in [0, 1, 2, 3] {
            let lp = prior_predictive_logpmf(&s, y).unwrap();
            let p = prior_predictive_pmf(&s, y).unwrap();
            assert!((lp.exp() - p).abs() <= 1e-10 * p);
        }
    }

    #[test]
    fn rejects_out_of_range_counts() {
        let s = spec(3, "beta:1,1");
        assert!(prior_predictive_pmf(&s, 4).is_err());
    }

    #[test]
    fn pmf_sums_to_one() {
        // Distinguishes the corrected numerator B(a+y, b+n−y) from the
        // uncorrected form, which does not normalize.
        let priors = [
            "beta:1,1,0,0.2",
            "beta:1,1,0.2,1",
            "beta:2.5,3.5,0,1",
            "beta:2,37,0.2,1",
            "point:0.4",
        ];
        for n in [1u64, 5, 17, 110, 853] {
            for prior in priors {
                let s = spec(n, prior);
                let mut total = 0.0;
                for y in 0..=n {
                    total += prior_predictive_pmf(&s, y).unwrap();
                }
                assert!(
                    (total - 1.0).abs() <= 1e-10,
                    "normalization failed for n={n}, prior={prior}: {total}"
                );
            }
        }
    }

    #[test]
    fn untruncated_case_is_beta_binomial() {
        let (a, b, n) = (2.5, 3.5, 40u64);
        let s = PredictiveSpec::new(
            n,
            crate::priors::DesignPrior::truncated_beta(a, b, 0.0, 1.0).unwrap(),
        )
        .unwrap();
        for y in 0..=n {
            let direct = (ln_binom(n, y) + log_beta(a + y as f64, b + (n - y) as f64).unwrap()
                - log_beta(a, b).unwrap())
            .exp();
            let got = prior_predictive_pmf(&s, y).unwrap();
            assert!((got - direct).abs() < 1e-12, "y={y}: {got} vs {direct}");
        }
    }

    #[test]
    fn matches_quadrature_of_binomial_against_prior() {
        let cases = [
            (10u64, 3u64, 2.0, 3.0, 0.0, 0.2),
            (25, 11, 1.0, 1.0, 0.2, 1.0),
            (60, 50, 4.5, 1.5, 0.5, 0.9),
        ];
        for (n, y, a, b, l, u) in cases {
            let prior = TruncatedBeta::new(a, b, l, u).unwrap();
            let s =
                PredictiveSpec::new(n, crate::priors::DesignPrior::TruncatedBeta(prior.clone()))
                    .unwrap();
            let oracle = adaptive_simpson(
                &|p| binomial_pmf(y, n, p) * prior.pdf(p).unwrap(),
                l,
                u,
                1e-12,
            );
            let got = prior_predictive_pmf(&s, y).unwrap();
            assert!(
                (got - oracle).abs() < 1e-8,
                "quadrature mismatch n={n} y={y}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn large_n_upper_truncation_matches_quadrature() {
        let prior = TruncatedBeta::new(1.0, 1.0, 0.5, 1.0).unwrap();
        let s = PredictiveSpec::new(
            150,
            crate::priors::DesignPrior::TruncatedBeta(prior.clone()),
        )
        .unwrap();
        let oracle = adaptive_simpson(
            &|p| binomial_pmf(70, 150, p) * prior.pdf(p).unwrap(),
            0.5,
            1.0,
            1e-13,
        );
        let got = prior_predictive_logpmf(&s, 70).unwrap().exp();
        assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
    }

    #[test]
    fn full_prior_splits_at_truncation_point() {
        // pmf under Beta(a,b) = w0·pmf on [0,p0] + w1·pmf on [p0,1] with
        // w0 = I_p0(a,b).
        let (a, b, p0, n) = (2.0, 3.0, 0.35, 30u64);
        let full = spec(n, &format!("beta:{a},{b}"));
        let below = spec(n, &format!("beta:{a},{b},0,{p0}"));
        let above = spec(n, &format!("beta:{a},{b},{p0},1"));
        let w0 = crate::specfun::reg_inc_beta(p0, a, b).unwrap();
        for y in 0..=n {
            let lhs = prior_predictive_pmf(&full, y).unwrap();
            let rhs = w0 * prior_predictive_pmf(&below, y).unwrap()
                + (1.0 - w0) * prior_predictive_pmf(&above, y).unwrap();
            assert!((lhs - rhs).abs() < 1e-10, "split identity failed at y={y}");
        }
    }

    #[test]
    fn zero_sample_size_is_rejected() {
        assert!(PredictiveSpec::new(0, "beta:1,1".parse().unwrap()).is_err());
    }
}
