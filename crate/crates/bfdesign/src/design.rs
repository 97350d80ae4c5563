//! The design engine: critical values by root-finding, exact operating
//! characteristics under design priors, oscillation-safe sample-size
//! search, and retrospective threshold search.
//!
//! All probabilities are exact sums of prior-predictive masses over the
//! outcome sets where ln BF01 crosses a threshold. The sets are located by
//! bracketed root-finding on the continuous extension of ln BF01(y)
//! followed by integer refinement: the continuous root is never trusted on
//! its own, every boundary integer is verified against the strict
//! inequality. For the directional test ln BF01 is strictly decreasing in
//! y, so crossing sets are tails; for the point-null test it is strictly
//! concave, so they are central intervals or their complements.

use crate::bayesfactor::{AnalysisPrior, OneSidedBf, TestSpec, TwoSidedBf};
use crate::error::{Error, Result};
use crate::exec;
use crate::predictive::{prior_predictive_pmf, PredictiveSpec};
use crate::priors::DesignPrior;

/// Which operating characteristic a search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// P(BF01 < k | H1), to be pushed above a target.
    Power,
    /// P(BF01 < k | H0), to be kept below a target.
    TypeI,
    /// P(BF01 > 1/k | H0), to be pushed above a target.
    H0Evidence,
}

impl Metric {
    pub(crate) fn name(&self) -> &'static str {
        match self {
            Metric::Power => "power",
            Metric::TypeI => "type-I error",
            Metric::H0Evidence => "H0 evidence",
        }
    }

    fn satisfied(&self, value: f64, target: f64) -> bool {
        match self {
            Metric::TypeI => value <= target,
            _ => value >= target,
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(Metric::Power),
            "t1e" => Ok(Metric::TypeI),
            "h0evidence" => Ok(Metric::H0Evidence),
            other => Err(Error::Domain(format!(
                "unknown metric `{other}`; expected power, t1e, or h0evidence"
            ))),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Full specification of a design: the test, the analysis prior inside the
/// Bayes factor, one design prior per hypothesis, the evidence threshold k,
/// and the band of Bayes factors counted as indecisive.
#[derive(Debug, Clone)]
pub struct DesignConfig {
    test: TestSpec,
    analysis: AnalysisPrior,
    design_h0: DesignPrior,
    design_h1: DesignPrior,
    k: f64,
    indecisive_band: (f64, f64),
}

impl DesignConfig {
    pub fn new(
        test: TestSpec,
        analysis: AnalysisPrior,
        design_h0: DesignPrior,
        design_h1: DesignPrior,
        k: f64,
    ) -> Result<Self> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::Config(format!(
                "evidence threshold k must be finite and positive, got {k}"
            )));
        }
        match test {
            TestSpec::OneSided { p0 } => {
                if design_h0.support().1 > p0 {
                    return Err(Error::Config(format!(
                        "H0 design prior must be supported within [0, p0={p0}], got {design_h0}"
                    )));
                }
                if design_h1.support().0 < p0 {
                    return Err(Error::Config(format!(
                        "H1 design prior must be supported within [p0={p0}, 1], got {design_h1}"
                    )));
                }
            }
            TestSpec::PointNull { p0 } => match &design_h0 {
                DesignPrior::PointMass(pm) if pm.p() == p0 => {}
                other => {
                    return Err(Error::Config(format!(
                        "point-null test requires the H0 design prior point:{p0}, got {other}"
                    )));
                }
            },
        }
        Ok(Self {
            test,
            analysis,
            design_h0,
            design_h1,
            k,
            indecisive_band: (1.0 / 3.0, 3.0),
        })
    }

    /// Replace the default (1/3, 3) band of indecisive Bayes factors.
    pub fn with_indecisive_band(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
            return Err(Error::Config(format!(
                "indecisive band must satisfy 0 < lo < hi, got ({lo}, {hi})"
            )));
        }
        self.indecisive_band = (lo, hi);
        Ok(self)
    }

    /// Same design evaluated at a different evidence threshold.
    pub fn with_k(&self, k: f64) -> Result<Self> {
        let mut cfg = self.clone();
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::Config(format!(
                "evidence threshold k must be finite and positive, got {k}"
            )));
        }
        cfg.k = k;
        Ok(cfg)
    }

    pub fn test(&self) -> TestSpec {
        self.test
    }

    pub fn analysis(&self) -> AnalysisPrior {
        self.analysis
    }

    pub fn design_h0(&self) -> &DesignPrior {
        &self.design_h0
    }

    pub fn design_h1(&self) -> &DesignPrior {
        &self.design_h1
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn indecisive_band(&self) -> (f64, f64) {
        self.indecisive_band
    }

    pub(crate) fn bf_eval(&self) -> Result<BfEval> {
        BfEval::new(self.test, &self.analysis)
    }
}

/// Continuous-extension evaluator of ln BF01 for either test.
pub(crate) enum BfEval {
    OneSided(OneSidedBf),
    PointNull(TwoSidedBf),
}

impl BfEval {
    pub(crate) fn new(test: TestSpec, analysis: &AnalysisPrior) -> Result<Self> {
        Ok(match test {
            TestSpec::OneSided { p0 } => Self::OneSided(OneSidedBf::new(p0, analysis)?),
            TestSpec::PointNull { p0 } => Self::PointNull(TwoSidedBf::new(p0, analysis)?),
        })
    }

    pub(crate) fn ln_bf(&self, y: f64, n: f64) -> Result<f64> {
        match self {
            Self::OneSided(bf) => bf.ln_bf(y, n),
            Self::PointNull(bf) => bf.ln_bf(y, n),
        }
    }
}

/// Set of outcome counts y in {0, …, n} where a strict Bayes factor
/// inequality holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Empty,
    /// {y : y ≥ from}.
    UpperTail {
        from: u64,
    },
    /// {y : y ≤ to}.
    LowerTail {
        to: u64,
    },
    /// {y : lo ≤ y ≤ hi}.
    Central {
        lo: u64,
        hi: u64,
    },
    /// {y : y ≤ lo} ∪ {y : y ≥ hi}, lo < hi.
    TwoTail {
        lo: u64,
        hi: u64,
    },
}

impl Region {
    pub fn contains(&self, y: u64) -> bool {
        match *self {
            Region::Empty => false,
            Region::UpperTail { from } => y >= from,
            Region::LowerTail { to } => y <= to,
            Region::Central { lo, hi } => lo <= y && y <= hi,
            Region::TwoTail { lo, hi } => y <= lo || y >= hi,
        }
    }

    /// Disjoint inclusive intervals covering the region inside {0, …, n}.
    pub(crate) fn intervals(&self, n: u64) -> Vec<(u64, u64)> {
        match *self {
            Region::Empty => vec![],
            Region::UpperTail { from } => vec![(from, n)],
            Region::LowerTail { to } => vec![(0, to.min(n))],
            Region::Central { lo, hi } => vec![(lo, hi.min(n))],
            Region::TwoTail { lo, hi } => vec![(0, lo), (hi, n)],
        }
    }

    /// Number of counts inside the region for sample size n.
    pub fn len(&self, n: u64) -> u64 {
        self.intervals(n).iter().map(|(a, b)| b - a + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Region::Empty)
    }

    fn check_bounds(&self, n: u64) -> Result<()> {
        let ok = match *self {
            Region::Empty => true,
            Region::UpperTail { from } => from <= n,
            Region::LowerTail { to } => to <= n,
            Region::Central { lo, hi } => lo <= hi && hi <= n,
            Region::TwoTail { lo, hi } => lo < hi && hi <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "region {self:?} has bounds outside 0..={n}"
            )))
        }
    }
}

/// All five operating characteristics of a design at sample size n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingCharacteristics {
    pub n: u64,
    /// P(BF01 < k | H1).
    pub power: f64,
    /// P(BF01 < k | H0).
    pub type1: f64,
    /// P(BF01 > 1/k | H0).
    pub h0_evidence: f64,
    /// P(lo < BF01 < hi | H0) for the indecisive band.
    pub indecisive_h0: f64,
    /// P(lo < BF01 < hi | H1) for the indecisive band.
    pub indecisive_h1: f64,
}

/// Search request for the minimal calibrated sample size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSizeQuery {
    pub metric: Metric,
    pub target: f64,
    pub n_min: u64,
    pub n_max: u64,
    /// The returned n must keep meeting the target for this many additional
    /// observations; guards against the oscillation of binomial operating
    /// characteristics in n.
    pub stability_window: u64,
}

impl SampleSizeQuery {
    pub fn new(metric: Metric, target: f64) -> Result<Self> {
        if !target.is_finite() || target <= 0.0 || target >= 1.0 {
            return Err(Error::Domain(format!(
                "target must lie strictly inside (0, 1), got {target}"
            )));
        }
        Ok(Self {
            metric,
            target,
            n_min: 1,
            n_max: 100_000,
            stability_window: 10,
        })
    }

    pub fn with_range(mut self, n_min: u64, n_max: u64) -> Result<Self> {
        if n_min < 1 || n_min > n_max {
            return Err(Error::Domain(format!(
                "need 1 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}"
            )));
        }
        self.n_min = n_min;
        self.n_max = n_max;
        Ok(self)
    }

    pub fn with_stability_window(mut self, window: u64) -> Self {
        self.stability_window = window;
        self
    }
}

// --- region construction ------------------------------------------------

/// Below this sample size the exhaustive scan is used directly; root-finding
/// takes over for larger n. Both paths return identical sets.
const SCAN_LIMIT: u64 = 64;

fn scan_region<P>(n: u64, pred: P) -> Result<Region>
where
    P: Fn(u64) -> Result<bool> + Sync + Send,
{
    let members = exec::run_indexed_if(n >= exec::PAR_THRESHOLD, n + 1, pred)?;
    let first = members.iter().position(|&m| m);
    let last = members.iter().rposition(|&m| m);
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f as u64, l as u64),
        _ => return Ok(Region::Empty),
    };
    let contiguous = (first..=last).all(|y| members[y as usize]);
    if contiguous {
        return Ok(match (first, last) {
            (0, l) if l == n => Region::UpperTail { from: 0 },
            (0, l) => Region::LowerTail { to: l },
            (f, l) if l == n => Region::UpperTail { from: f },
            (f, l) => Region::Central { lo: f, hi: l },
        });
    }
    // prefix + suffix is the only other legal shape: the false counts must
    // form one contiguous interior run
    let first_false = members.iter().position(|&m| !m).unwrap() as u64;
    let last_false = members.iter().rposition(|&m| !m).unwrap() as u64;
    let two_tail =
        first == 0 && last == n && (first_false..=last_false).all(|y| !members[y as usize]);
    if two_tail {
        Ok(Region::TwoTail {
            lo: first_false - 1,
            hi: last_false + 1,
        })
    } else {
        Err(Error::Domain(
            "Bayes factor crossing set is not tail- or interval-shaped".into(),
        ))
    }
}

/// Continuous bisection for the crossing of `g(y) = ln BF01(y) − c` on
/// [lo, hi], where `below(lo) != below(hi)`. Returns a point within 1e-6 of
/// the sign change.
fn bisect_crossing<G>(g: &G, mut lo: f64, mut hi: f64, below_at_lo: bool) -> Result<f64>
where
    G: Fn(f64) -> Result<bool>,
{
    for _ in 0..80 {
        if hi - lo < 1e-6 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid)? == below_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest integer in [0, limit] satisfying `pred`, given that `pred` is
/// true on a prefix ending near `near`. Verifies boundary integers directly.
fn refine_prefix_end<P>(near: f64, limit: u64, pred: &P) -> Result<Option<u64>>
where
    P: Fn(u64) -> Result<bool>,
{
    let mut y = near.floor().clamp(0.0, limit as f64) as u64;
    while !pred(y)? {
        if y == 0 {
            return Ok(None);
        }
        y -= 1;
    }
    while y < limit && pred(y + 1)? {
        y += 1;
    }
    Ok(Some(y))
}

/// Smallest integer in [start, n] satisfying `pred`, given that `pred` is
/// true on a suffix starting near `near`.
fn refine_suffix_start<P>(near: f64, start: u64, n: u64, pred: &P) -> Result<Option<u64>>
where
    P: Fn(u64) -> Result<bool>,
{
    let mut y = near.ceil().clamp(start as f64, n as f64) as u64;
    while !pred(y)? {
        if y == n {
            return Ok(None);
        }
        y += 1;
    }
    while y > start && pred(y - 1)? {
        y -= 1;
    }
    Ok(Some(y))
}

/// Maximizer of the strictly concave continuous extension of ln BF01 on
/// [0, n], by golden-section search. Concavity makes this exact up to the
/// final interval width.
fn concave_maximizer<G>(g: &G, n: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (0.0_f64, n);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = g(x1)?;
    let mut f2 = g(x2)?;
    while hi - lo > 1e-8 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = g(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = g(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Exact set {y : ln BF01(y) < ln_c}.
fn strict_sub_level(cfg: &DesignConfig, n: u64, ln_c: f64) -> Result<Region> {
    let bf = cfg.bf_eval()?;
    let nf = n as f64;
    let pred = |y: u64| Ok(bf.ln_bf(y as f64, nf)? < ln_c);
    if n <= SCAN_LIMIT {
        return scan_region(n, pred);
    }
    match bf {
        BfEval::OneSided(_) => {
            // ln BF01 strictly decreasing in y: the set is an upper tail.
            if !pred(n)? {
                return Ok(Region::Empty);
            }
            if pred(0)? {
                return Ok(Region::UpperTail { from: 0 });
            }
            let below = |y: f64| Ok(bf.ln_bf(y, nf)? < ln_c);
            let root = bisect_crossing(&below, 0.0, nf, false)?;
            match refine_suffix_start(root, 0, n, &pred)? {
                Some(from) => Ok(Region::UpperTail { from }),
                None => Ok(Region::Empty),
            }
        }
        BfEval::PointNull(_) => {
            // ln BF01 strictly concave in y: the set is the complement of a
            // central interval.
            let cont = |y: f64| bf.ln_bf(y, nf);
            let ymax = concave_maximizer(&cont, nf)?;
            if cont(ymax)? < ln_c {
                return Ok(Region::UpperTail { from: 0 });
            }
            let below = |y: f64| Ok(bf.ln_bf(y, nf)? < ln_c);
            let left = if pred(0)? {
                let root = bisect_crossing(&below, 0.0, ymax, true)?;
                refine_prefix_end(root, n, &pred)?
            } else {
                None
            };
            let right = if pred(n)? {
                let root = bisect_crossing(&below, ymax, nf, false)?;
                refine_suffix_start(root, 0, n, &pred)?
            } else {
                None
            };
            Ok(match (left, right) {
                // tails meeting or overlapping means every integer count is
                // below the threshold (the hump above it fits between
                // integers), which is the full set
                (Some(lo), Some(hi)) if lo + 1 >= hi => Region::UpperTail { from: 0 },
                (Some(lo), Some(hi)) => Region::TwoTail { lo, hi },
                (Some(lo), None) => Region::LowerTail { to: lo },
                (None, Some(hi)) => Region::UpperTail { from: hi },
                (None, None) => Region::Empty,
            })
        }
    }
}

/// Exact set {y : ln BF01(y) > ln_c}.
fn strict_super_level(cfg: &DesignConfig, n: u64, ln_c: f64) -> Result<Region> {
    let bf = cfg.bf_eval()?;
    let nf = n as f64;
    let pred = |y: u64| Ok(bf.ln_bf(y as f64, nf)? > ln_c);
    if n <= SCAN_LIMIT {
        return scan_region(n, pred);
    }
    match bf {
        BfEval::OneSided(_) => {
            // decreasing: the set is a lower tail.
            if !pred(0)? {
                return Ok(Region::Empty);
            }
            if pred(n)? {
                return Ok(Region::LowerTail { to: n });
            }
            let above = |y: f64| Ok(bf.ln_bf(y, nf)? > ln_c);
            let root = bisect_crossing(&above, 0.0, nf, true)?;
            match refine_prefix_end(root, n, &pred)? {
                Some(to) => Ok(Region::LowerTail { to }),
                None => Ok(Region::Empty),
            }
        }
        BfEval::PointNull(_) => {
            // concave: the set is a central interval.
            let cont = |y: f64| bf.ln_bf(y, nf);
            let ymax = concave_maximizer(&cont, nf)?;
            if cont(ymax)? <= ln_c {
                return Ok(Region::Empty);
            }
            let above = |y: f64| Ok(bf.ln_bf(y, nf)? > ln_c);
            let lo = if pred(0)? {
                0
            } else {
                let root = bisect_crossing(&above, 0.0, ymax, false)?;
                match refine_suffix_start(root, 0, n, &pred)? {
                    Some(lo) => lo,
                    None => return Ok(Region::Empty),
                }
            };
            let hi = if pred(n)? {
                n
            } else {
                let root = bisect_crossing(&above, ymax, nf, true)?;
                match refine_prefix_end(root, n, &pred)? {
                    Some(hi) => hi,
                    None => return Ok(Region::Empty),
                }
            };
            Ok(Region::Central { lo, hi })
        }
    }
}

/// Exact set {y : BF01(y) < k}, the outcomes rejecting H0 at evidence
/// threshold k. The inequality is strict; boundary-equal Bayes factors are
/// excluded.
pub fn rejection_set(cfg: &DesignConfig, n: u64) -> Result<Region> {
    check_n(n)?;
    strict_sub_level(cfg, n, cfg.k.ln())
}

/// Exact set {y : BF01(y) > 1/k}, the outcomes providing compelling
/// evidence for H0.
pub fn acceptance_set(cfg: &DesignConfig, n: u64) -> Result<Region> {
    check_n(n)?;
    strict_super_level(cfg, n, -cfg.k.ln())
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("sample size n must be at least 1".into()));
    }
    Ok(())
}

// --- probabilities ------------------------------------------------------

fn intervals_probability(intervals: &[(u64, u64)], prior: &DesignPrior, n: u64) -> Result<f64> {
    let spec = PredictiveSpec::new(n, prior.clone())?;
    let mut total = 0.0;
    for &(lo, hi) in intervals {
        total += exec::sum_range(lo, hi, |y| prior_predictive_pmf(&spec, y))?;
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Exact prior-predictive probability of the region under a design prior.
pub fn region_probability(region: &Region, prior: &DesignPrior, n: u64) -> Result<f64> {
    check_n(n)?;
    region.check_bounds(n)?;
    intervals_probability(&region.intervals(n), prior, n)
}

fn intersect_intervals(a: &[(u64, u64)], b: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for &(alo, ahi) in a {
        for &(blo, bhi) in b {
            let lo = alo.max(blo);
            let hi = ahi.min(bhi);
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    out
}

/// All five exact operating characteristics of the design at sample size n.
pub fn operating_characteristics(cfg: &DesignConfig, n: u64) -> Result<OperatingCharacteristics> {
    check_n(n)?;
    let rejection = rejection_set(cfg, n)?;
    let acceptance = acceptance_set(cfg, n)?;
    let (band_lo, band_hi) = cfg.indecisive_band;
    let below_hi = strict_sub_level(cfg, n, band_hi.ln())?;
    let above_lo = strict_super_level(cfg, n, band_lo.ln())?;
    let band = intersect_intervals(&below_hi.intervals(n), &above_lo.intervals(n));
    Ok(OperatingCharacteristics {
        n,
        power: region_probability(&rejection, &cfg.design_h1, n)?,
        type1: region_probability(&rejection, &cfg.design_h0, n)?,
        h0_evidence: region_probability(&acceptance, &cfg.design_h0, n)?,
        indecisive_h0: intervals_probability(&band, &cfg.design_h0, n)?,
        indecisive_h1: intervals_probability(&band, &cfg.design_h1, n)?,
    })
}

/// The single metric a search cares about, without computing the rest.
fn metric_value(cfg: &DesignConfig, n: u64, metric: Metric) -> Result<f64> {
    match metric {
        Metric::Power => region_probability(&rejection_set(cfg, n)?, &cfg.design_h1, n),
        Metric::TypeI => region_probability(&rejection_set(cfg, n)?, &cfg.design_h0, n),
        Metric::H0Evidence => region_probability(&acceptance_set(cfg, n)?, &cfg.design_h0, n),
    }
}

/// Smallest n in [n_min, n_max] whose metric meets the target at n and at
/// every n+1, …, n+stability_window; returns its full operating
/// characteristics.
///
/// The search advances n one step at a time — power and type-I error are
/// not monotone in n for binomial data, so bisection over n would be
/// unsound. When a window check fails at some n+j, every candidate up to
/// n+j is invalid and the search resumes at n+j+1.
pub fn find_sample_size(
    cfg: &DesignConfig,
    query: &SampleSizeQuery,
) -> Result<OperatingCharacteristics> {
    let metric = query.metric;
    let mut best = match metric {
        Metric::TypeI => f64::INFINITY,
        _ => f64::NEG_INFINITY,
    };
    let mut improve = |v: f64| match metric {
        Metric::TypeI => best = best.min(v),
        _ => best = best.max(v),
    };
    let mut n = query.n_min;
    while n <= query.n_max {
        let value = metric_value(cfg, n, metric)?;
        improve(value);
        if !metric.satisfied(value, query.target) {
            n += 1;
            continue;
        }
        // stability check over the next `stability_window` sample sizes
        // each window evaluation costs O(n); parallelize only once that
        // dominates the dispatch overhead
        let window = exec::run_indexed_if(n >= exec::PAR_THRESHOLD, query.stability_window, |j| {
            metric_value(cfg, n + 1 + j, metric)
        })?;
        match window
            .iter()
            .position(|&v| !metric.satisfied(v, query.target))
        {
            None => return operating_characteristics(cfg, n),
            Some(j) => {
                for &v in &window {
                    improve(v);
                }
                // every candidate in (n, n+1+j] fails inside its own window
                n = n + 1 + j as u64 + 1;
            }
        }
    }
    Err(Error::SampleSizeNotAttainable {
        metric: metric.name(),
        target: query.target,
        n_max: query.n_max,
        best,
    })
}

const THRESHOLD_LO: f64 = 1e-8;
const THRESHOLD_HI: f64 = 1.0;

/// The most stringent evidence threshold k meeting the target at a fixed n.
///
/// Every metric grows with k (the rejection set grows, 1/k shrinks), so the
/// satisfying thresholds form an interval: for power and H0 evidence the
/// boundary is the smallest satisfying k, for type-I error it is the
/// largest. Located by bisection over ln k with exact evaluation at every
/// candidate, to a tolerance of 1e-6 in ln k.
pub fn find_threshold(cfg: &DesignConfig, n: u64, metric: Metric, target: f64) -> Result<f64> {
    check_n(n)?;
    if !target.is_finite() || target <= 0.0 || target >= 1.0 {
        return Err(Error::Domain(format!(
            "target must lie strictly inside (0, 1), got {target}"
        )));
    }
    let eval = |k: f64| metric_value(&cfg.with_k(k)?, n, metric);
    let sat = |v: f64| metric.satisfied(v, target);

    let v_lo = eval(THRESHOLD_LO)?;
    let v_hi = eval(THRESHOLD_HI)?;
    let not_attainable = |best: f64| Error::ThresholdNotAttainable {
        metric: metric.name(),
        target,
        lo: THRESHOLD_LO,
        hi: THRESHOLD_HI,
        best,
    };

    match metric {
        Metric::Power | Metric::H0Evidence => {
            if sat(v_lo) {
                return Ok(THRESHOLD_LO);
            }
            if !sat(v_hi) {
                return Err(not_attainable(v_hi));
            }
            let (mut lo, mut hi) = (THRESHOLD_LO.ln(), THRESHOLD_HI.ln());
            while hi - lo > 1e-6 {
                let mid = 0.5 * (lo + hi);
                if sat(eval(mid.exp())?) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(hi.exp())
        }
        Metric::TypeI => {
            if !sat(v_lo) {
                return Err(not_attainable(v_lo));
            }
            if sat(v_hi) {
                return Ok(THRESHOLD_HI);
            }
            let (mut lo, mut hi) = (THRESHOLD_LO.ln(), THRESHOLD_HI.ln());
            while hi - lo > 1e-6 {
                let mid = 0.5 * (lo + hi);
                if sat(eval(mid.exp())?) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(lo.exp())
        }
    }
}
