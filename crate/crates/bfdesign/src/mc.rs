//! Seeded Monte Carlo estimator of every operating characteristic, with
//! Monte Carlo standard errors.
//!
//! This is the validation oracle for the exact engine: it simulates the
//! classical two-stage scheme — draw a success probability from the design
//! prior, draw a count from the binomial likelihood, test the Bayes factor
//! against the threshold — and reports the indicator mean together with its
//! binomial standard error sqrt(p̂(1−p̂)/nsim).
//!
//! Reproducibility contract: simulation runs in `chunks` independent
//! streams. Chunk seeds are consecutive outputs of `SplitMix64(seed)`; each
//! chunk generator is xoshiro256++ seeded from its chunk seed; chunk i of c
//! performs ⌈nsim/c⌉ or ⌊nsim/c⌋ replicates (larger chunks first). Each
//! replicate consumes one uniform for the prior draw (none for a point
//! mass) and one for the binomial count, which is inverted through its CDF
//! anchored at the distribution mode. Results are therefore bit-identical
//! for a fixed `(seed, chunks)` pair, whether or not the chunks run in
//! parallel.

use crate::design::{BfEval, DesignConfig};
use crate::error::{Error, Result};
use crate::exec;
use crate::rng::{SplitMix64, Xoshiro256PlusPlus};
use crate::specfun::reg_inc_beta;

/// Which hypothesis the parameter draws come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    H0,
    H1,
}

/// Which Bayes factor event the indicator counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McEvent {
    /// BF01 < k.
    Rejection,
    /// BF01 > 1/k.
    H0Evidence,
    /// lo < BF01 < hi for the configured indecisive band.
    Indecisive,
}

/// A Monte Carlo estimate with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// sqrt(estimate · (1 − estimate) / nsim).
    pub mcse: f64,
    pub nsim: u64,
    pub seed: u64,
    pub chunks: u32,
}

/// Binomial draw by CDF inversion: the smallest y with u ≤ P(Y ≤ y).
///
/// The walk starts at the mode ⌊(n+1)p⌋, where the pmf cannot underflow,
/// with the CDF below the mode anchored by one incomplete-beta evaluation;
/// it then accumulates pmf terms up or down via the multiplicative
/// recurrence. Expected walk length is O(√(np(1−p))).
fn binomial_inverse(n: u64, p: f64, u: f64) -> Result<u64> {
    if p <= 0.0 {
        return Ok(0);
    }
    if p >= 1.0 {
        return Ok(n);
    }
    let nf = n as f64;
    let mode = ((nf + 1.0) * p).floor().min(nf) as u64;
    // P(Y <= mode-1) = 1 − I_p(mode, n−mode+1)
    let cdf_below = if mode == 0 {
        0.0
    } else {
        1.0 - reg_inc_beta(p, mode as f64, (n - mode + 1) as f64)?
    };
    let ln_pmf_mode =
        crate::specfun::ln_binom(n, mode) + mode as f64 * p.ln() + (n - mode) as f64 * (-p).ln_1p();
    let pmf_mode = ln_pmf_mode.exp();
    let odds = p / (1.0 - p);
    if u < cdf_below {
        // walk down from the mode
        let mut y = mode; // first candidate below is mode-1
        let mut cum = cdf_below;
        let mut pmf = pmf_mode;
        while y > 0 {
            // pmf(y-1) = pmf(y) · y / ((n−y+1) · odds)
            pmf = pmf * y as f64 / ((n - y + 1) as f64 * odds);
            cum -= pmf;
            y -= 1;
            if u > cum || pmf == 0.0 {
                return Ok(y);
            }
        }
        Ok(0)
    } else {
        // walk up from the mode
        let mut y = mode;
        let mut cum = cdf_below + pmf_mode;
        let mut pmf = pmf_mode;
        while y < n {
            if u <= cum || pmf == 0.0 {
                return Ok(y);
            }
            // pmf(y+1) = pmf(y) · (n−y)/(y+1) · odds
            pmf = pmf * (n - y) as f64 / (y + 1) as f64 * odds;
            cum += pmf;
            y += 1;
        }
        Ok(n)
    }
}

/// Monte Carlo estimate of P(event | hypothesis) at sample size n,
/// fully deterministic for a fixed `(seed, chunks)` pair.
pub fn mc_probability(
    cfg: &DesignConfig,
    n: u64,
    hypothesis: Hypothesis,
    event: McEvent,
    nsim: u64,
    seed: u64,
    chunks: u32,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::Domain("sample size n must be at least 1".into()));
    }
    if nsim < 100 {
        return Err(Error::Domain(format!(
            "nsim must be at least 100, got {nsim}"
        )));
    }
    if chunks == 0 {
        return Err(Error::Domain("chunk count must be at least 1".into()));
    }
    let prior = match hypothesis {
        Hypothesis::H0 => cfg.design_h0(),
        Hypothesis::H1 => cfg.design_h1(),
    };
    // The Bayes factor for every possible count, evaluated once through the
    // closed forms; each replicate then only compares against the threshold.
    let bf = cfg.bf_eval()?;
    let ln_bf_table = table_ln_bf(&bf, n)?;
    let ln_k = cfg.k().ln();
    let (band_lo, band_hi) = cfg.indecisive_band();
    let hit = move |ln_bf: f64| -> bool {
        match event {
            McEvent::Rejection => ln_bf < ln_k,
            McEvent::H0Evidence => ln_bf > -ln_k,
            McEvent::Indecisive => band_lo.ln() < ln_bf && ln_bf < band_hi.ln(),
        }
    };

    let mut seeder = SplitMix64::new(seed);
    let chunk_seeds: Vec<u64> = (0..chunks).map(|_| seeder.next_u64()).collect();
    let base = nsim / chunks as u64;
    let extra = nsim % chunks as u64;

    let counts = exec::run_indexed_if(chunks > 1, chunks as u64, |c| {
        let reps = base + u64::from(c < extra);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(chunk_seeds[c as usize]);
        let mut count = 0u64;
        for _ in 0..reps {
            let p = prior.sample(&mut rng)?;
            let y = binomial_inverse(n, p, rng.uniform_open01())?;
            if hit(ln_bf_table[y as usize]) {
                count += 1;
            }
        }
        Ok(count)
    })?;
    let count: u64 = counts.iter().sum();

    let estimate = count as f64 / nsim as f64;
    Ok(McEstimate {
        estimate,
        mcse: (estimate * (1.0 - estimate) / nsim as f64).sqrt(),
        nsim,
        seed,
        chunks,
    })
}

fn table_ln_bf(bf: &BfEval, n: u64) -> Result<Vec<f64>> {
    exec::run_indexed_if(n >= exec::PAR_THRESHOLD, n + 1, |y| {
        bf.ln_bf(y as f64, n as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayesfactor::{AnalysisPrior, TestSpec};
    use crate::design::{operating_characteristics, rejection_set, Metric, Region};
    use crate::priors::DesignPrior;

    fn touch_cfg(k: f64) -> DesignConfig {
        DesignConfig::new(
            TestSpec::one_sided(0.5).unwrap(),
            AnalysisPrior::flat(),
            DesignPrior::truncated_beta(1.0, 1.0, 0.0, 0.5).unwrap(),
            DesignPrior::truncated_beta(1.0, 1.0, 0.5, 1.0).unwrap(),
            k,
        )
        .unwrap()
    }

    #[test]
    fn deterministic_for_fixed_seed_and_chunks() {
        let cfg = touch_cfg(0.1);
        let a = mc_probability(&cfg, 40, Hypothesis::H1, McEvent::Rejection, 5000, 7, 4).unwrap();
        let b = mc_probability(&cfg, 40, Hypothesis::H1, McEvent::Rejection, 5000, 7, 4).unwrap();
        assert_eq!(a, b);
        let c = mc_probability(&cfg, 40, Hypothesis::H1, McEvent::Rejection, 5000, 8, 4).unwrap();
        assert_ne!(a.estimate, c.estimate);
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let cfg = touch_cfg(0.1);
        crate::runtime::set_parallel(true);
        let par =
            mc_probability(&cfg, 60, Hypothesis::H0, McEvent::H0Evidence, 20_000, 3, 8).unwrap();
        crate::runtime::set_parallel(false);
        let seq =
            mc_probability(&cfg, 60, Hypothesis::H0, McEvent::H0Evidence, 20_000, 3, 8).unwrap();
        crate::runtime::set_parallel(true);
        assert_eq!(par, seq);
    }

    #[test]
    fn empty_rejection_set_gives_zero_estimate() {
        // one-sided p0=0.2, k=1/10, n=1 has an empty rejection set
        let cfg = DesignConfig::new(
            TestSpec::one_sided(0.2).unwrap(),
            AnalysisPrior::flat(),
            DesignPrior::truncated_beta(1.0, 1.0, 0.0, 0.2).unwrap(),
            DesignPrior::truncated_beta(1.0, 1.0, 0.2, 1.0).unwrap(),
            0.1,
        )
        .unwrap();
        assert_eq!(rejection_set(&cfg, 1).unwrap(), Region::Empty);
        let est = mc_probability(&cfg, 1, Hypothesis::H1, McEvent::Rejection, 1000, 1, 1).unwrap();
        assert_eq!(est.estimate, 0.0);
        assert_eq!(est.mcse, 0.0);
    }

    #[test]
    fn mcse_follows_binomial_formula() {
        let cfg = touch_cfg(0.1);
        let est =
            mc_probability(&cfg, 50, Hypothesis::H1, McEvent::Rejection, 10_000, 1, 1).unwrap();
        let want = (est.estimate * (1.0 - est.estimate) / 10_000.0).sqrt();
        assert_eq!(est.mcse, want);
        // an estimate of 0.5 at nsim = 10000 has mcse 0.005 exactly
        assert_eq!((0.5f64 * 0.5 / 10_000.0).sqrt(), 0.005);
        // quadrupling nsim halves the mcse at equal estimates
        assert_eq!(
            (0.5f64 * 0.5 / 40_000.0).sqrt(),
            (0.5f64 * 0.5 / 10_000.0).sqrt() / 2.0
        );
    }

    #[test]
    fn phase_ii_power_estimate_brackets_exact_value() {
        let cfg = DesignConfig::new(
            TestSpec::one_sided(0.2).unwrap(),
            AnalysisPrior::flat(),
            DesignPrior::truncated_beta(1.0, 1.0, 0.0, 0.2).unwrap(),
            DesignPrior::truncated_beta(1.0, 1.0, 0.2, 1.0).unwrap(),
            0.1,
        )
        .unwrap();
        let exact = operating_characteristics(&cfg, 110).unwrap().power;
        assert!((exact - 0.9005).abs() < 5e-5);
        let est = mc_probability(
            &cfg,
            110,
            Hypothesis::H1,
            McEvent::Rejection,
            100_000,
            42,
            1,
        )
        .unwrap();
        assert!(
            (est.estimate - exact).abs() <= 3.0 * est.mcse,
            "mc {} vs exact {exact} (mcse {})",
            est.estimate,
            est.mcse
        );
    }

    #[test]
    fn larger_nsim_shrinks_the_error() {
        let cfg = touch_cfg(0.1);
        let oc = operating_characteristics(&cfg, 50).unwrap();
        let mean_abs_err = |nsim: u64| {
            (0..5u64)
                .map(|s| {
                    let est =
                        mc_probability(&cfg, 50, Hypothesis::H1, McEvent::Rejection, nsim, s, 1)
                            .unwrap();
                    (est.estimate - oc.power).abs()
                })
                .sum::<f64>()
                / 5.0
        };
        assert!(mean_abs_err(160_000) < mean_abs_err(10_000));
    }

    #[test]
    fn binomial_inverse_matches_cdf_boundaries() {
        // For u in each pmf cell the inversion must return that cell's y.
        let (n, p) = (12u64, 0.37);
        let mut cum = 0.0;
        for y in 0..=n {
            let pmf = crate::testutil::binomial_pmf(y, n, p);
            let inside = cum + 0.5 * pmf;
            assert_eq!(
                binomial_inverse(n, p, inside).unwrap(),
                y,
                "mid of cell {y}"
            );
            cum += pmf;
        }
        assert_eq!(binomial_inverse(n, 0.0, 0.99).unwrap(), 0);
        assert_eq!(binomial_inverse(n, 1.0, 0.01).unwrap(), n);
    }

    #[test]
    fn agrees_with_exact_engine_on_touch_design() {
        let cfg = touch_cfg(0.1);
        let oc = operating_characteristics(&cfg, 50).unwrap();
        let exact = [
            (Hypothesis::H1, McEvent::Rejection, oc.power),
            (Hypothesis::H0, McEvent::Rejection, oc.type1),
            (Hypothesis::H0, McEvent::H0Evidence, oc.h0_evidence),
            (Hypothesis::H0, McEvent::Indecisive, oc.indecisive_h0),
            (Hypothesis::H1, McEvent::Indecisive, oc.indecisive_h1),
        ];
        for (hyp, event, want) in exact {
            let est = mc_probability(&cfg, 50, hyp, event, 100_000, 20240811, 8).unwrap();
            let se = est.mcse.max((want * (1.0 - want) / 100_000.0).sqrt());
            assert!(
                (est.estimate - want).abs() <= 4.0 * se,
                "{hyp:?}/{event:?}: mc {} vs exact {want}",
                est.estimate
            );
        }
    }

    #[test]
    fn threshold_metric_is_consistent_with_search() {
        // smoke check that Metric parsing used by the CLI stays wired
        assert_eq!("power".parse::<Metric>().unwrap(), Metric::Power);
        assert!("bogus".parse::<Metric>().is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = touch_cfg(0.1);
        assert!(mc_probability(&cfg, 0, Hypothesis::H0, McEvent::Rejection, 1000, 1, 1).is_err());
        assert!(mc_probability(&cfg, 10, Hypothesis::H0, McEvent::Rejection, 99, 1, 1).is_err());
        assert!(mc_probability(&cfg, 10, Hypothesis::H0, McEvent::Rejection, 1000, 1, 0).is_err());
    }
}
