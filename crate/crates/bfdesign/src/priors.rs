//! Design priors on a binomial success probability: truncated Beta
//! distributions and point masses.
//!
//! A truncated Beta restricts `Beta(a, b)` to `[lower, upper]` and
//! renormalizes; a point mass puts all mass on a single probability and
//! realizes the frequentist limit of an infinitely informative Beta prior.

use crate::error::{Error, Result};
use crate::rng::Xoshiro256PlusPlus;
use crate::specfun::{inc_beta_mass, inv_reg_inc_beta_nearest, log_beta, reg_inc_beta};
use std::fmt;
use std::str::FromStr;

/// Beta(a, b) restricted to `[lower, upper]` and renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBeta {
    a: f64,
    b: f64,
    lower: f64,
    upper: f64,
    /// I_upper(a,b) − I_lower(a,b), cached at construction.
    mass: f64,
    /// I_lower(a,b), cached for inverse-CDF sampling.
    cdf_lower: f64,
    /// ln B(a, b).
    ln_beta: f64,
}

impl TruncatedBeta {
    pub fn new(a: f64, b: f64, lower: f64, upper: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 || !b.is_finite() || b <= 0.0 {
            return Err(Error::Domain(format!(
                "Beta shapes must be finite and positive, got a={a}, b={b}"
            )));
        }
        if !lower.is_finite() || !upper.is_finite() || lower < 0.0 || upper > 1.0 || lower >= upper
        {
            return Err(Error::Domain(format!(
                "truncation bounds must satisfy 0 <= lower < upper <= 1, got [{lower}, {upper}]"
            )));
        }
        let mass = inc_beta_mass(lower, upper, a, b)?;
        if mass <= 0.0 {
            return Err(Error::Domain(format!(
                "Beta({a}, {b}) carries no mass on [{lower}, {upper}]"
            )));
        }
        Ok(Self {
            a,
            b,
            lower,
            upper,
            mass,
            cdf_lower: reg_inc_beta(lower, a, b)?,
            ln_beta: log_beta(a, b)?,
        })
    }

    /// Untruncated Beta(a, b) on the full unit interval.
    pub fn untruncated(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, 0.0, 1.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub(crate) fn mass(&self) -> f64 {
        self.mass
    }

    pub(crate) fn ln_beta(&self) -> f64 {
        self.ln_beta
    }

    /// Density at p; zero outside the truncation interval.
    pub fn pdf(&self, p: f64) -> Result<f64> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
        }
        if p < self.lower || p > self.upper {
            return Ok(0.0);
        }
        let t1 = if self.a == 1.0 {
            0.0
        } else {
            (self.a - 1.0) * p.ln()
        };
        let t2 = if self.b == 1.0 {
            0.0
        } else {
            (self.b - 1.0) * (-p).ln_1p()
        };
        Ok((t1 + t2 - self.ln_beta - self.mass.ln()).exp())
    }

    /// CDF at x: 0 below the support, 1 above it.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x must lie in [0, 1], got {x}")));
        }
        if x <= self.lower {
            return Ok(0.0);
        }
        if x >= self.upper {
            return Ok(1.0);
        }
        Ok((inc_beta_mass(self.lower, x, self.a, self.b)? / self.mass).clamp(0.0, 1.0))
    }

    /// Expectation of the truncated distribution:
    /// a/(a+b) · (I_u(a+1,b) − I_l(a+1,b)) / (I_u(a,b) − I_l(a,b)).
    pub fn mean(&self) -> Result<f64> {
        let shifted = inc_beta_mass(self.lower, self.upper, self.a + 1.0, self.b)?;
        Ok(self.a / (self.a + self.b) * shifted / self.mass)
    }

    /// Interior mode (a−1)/(a+b−2) clamped into the support. The mode is
    /// truncation-invariant while it lies inside `[lower, upper]`; when it
    /// falls outside, the density is monotone on the support and the nearer
    /// boundary is the mode.
    pub fn mode(&self) -> Result<f64> {
        if self.a <= 1.0 || self.b <= 1.0 {
            return Err(Error::NoUniqueMode {
                a: self.a,
                b: self.b,
            });
        }
        Ok(((self.a - 1.0) / (self.a + self.b - 2.0)).clamp(self.lower, self.upper))
    }

    /// Inverse-CDF draw: maps a uniform on (0, 1) through the truncated
    /// quantile function, so every draw lands in `[lower, upper]` and the
    /// draw count per sample is deterministic. Uses the nearest-float
    /// quantile, which keeps sampling total even where the CDF jumps past
    /// the drawn q between adjacent floats (spiked shapes near a support
    /// boundary).
    pub fn sample(&self, rng: &mut Xoshiro256PlusPlus) -> Result<f64> {
        let u = rng.uniform_open01();
        let q = (self.cdf_lower + u * self.mass).clamp(0.0, 1.0);
        Ok(inv_reg_inc_beta_nearest(q, self.a, self.b)?.clamp(self.lower, self.upper))
    }
}

/// All mass on a single success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass {
    p: f64,
}

impl PointMass {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::Domain(format!(
                "point mass must lie strictly inside (0, 1), got {p}"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Prior used to average operating characteristics at the design stage.
#[derive(Debug, Clone, PartialEq)]
pub enum DesignPrior {
    TruncatedBeta(TruncatedBeta),
    PointMass(PointMass),
}

impl DesignPrior {
    pub fn truncated_beta(a: f64, b: f64, lower: f64, upper: f64) -> Result<Self> {
        Ok(Self::TruncatedBeta(TruncatedBeta::new(a, b, lower, upper)?))
    }

    pub fn point(p: f64) -> Result<Self> {
        Ok(Self::PointMass(PointMass::new(p)?))
    }

    /// Closed support interval of the prior.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::TruncatedBeta(tb) => (tb.lower, tb.upper),
            Self::PointMass(pm) => (pm.p, pm.p),
        }
    }

    /// Draw one success probability. A point mass returns its value exactly
    /// and consumes nothing from the generator stream.
    pub fn sample(&self, rng: &mut Xoshiro256PlusPlus) -> Result<f64> {
        match self {
            Self::TruncatedBeta(tb) => tb.sample(rng),
            Self::PointMass(pm) => Ok(pm.p),
        }
    }
}

impl fmt::Display for DesignPrior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TruncatedBeta(tb) => {
                write!(f, "beta:{},{},{},{}", tb.a, tb.b, tb.lower, tb.upper)
            }
            Self::PointMass(pm) => write!(f, "point:{}", pm.p),
        }
    }
}

impl FromStr for DesignPrior {
    type Err = Error;

    /// Parses the prior mini-grammar: `beta:a,b[,l,u]` (truncation bounds
    /// default to 0 and 1) or `point:p`. Plain decimal literals only.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::ParsePrior(s.to_string(), msg.to_string());
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| bad("expected `beta:...` or `point:...`"))?;
        let fields: Vec<f64> = rest
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| bad(&format!("bad numeric field: {e}")))?;
        match (kind.trim(), fields.as_slice()) {
            ("beta", [a, b]) => Self::truncated_beta(*a, *b, 0.0, 1.0),
            ("beta", [a, b, l, u]) => Self::truncated_beta(*a, *b, *l, *u),
            ("beta", _) => Err(bad("beta takes 2 or 4 fields: a,b[,l,u]")),
            ("point", [p]) => Self::point(*p),
            ("point", _) => Err(bad("point takes exactly 1 field: p")),
            _ => Err(bad("unknown prior kind; use `beta:` or `point:`")),
        }
    }
}

/// Shape a_d solving (a_d − 1)/(a_d + b_d − 2) = p1, so the (truncated)
/// Beta(a_d, b_d) prior has its mode at p1: a_d = (p1 (b_d − 2) + 1)/(1 − p1).
pub fn mode_centered_a(p1: f64, b_d: f64) -> Result<f64> {
    if !p1.is_finite() || p1 <= 0.0 || p1 >= 1.0 {
        return Err(Error::Domain(format!(
            "mode location p1 must lie in (0, 1), got {p1}"
        )));
    }
    if !b_d.is_finite() || b_d <= 1.0 {
        return Err(Error::Domain(format!(
            "mode centering requires b_d > 1, got {b_d}"
        )));
    }
    let a_d = (p1 * (b_d - 2.0) + 1.0) / (1.0 - p1);
    if a_d <= 1.0 {
        return Err(Error::DegenerateCentering { a_d });
    }
    Ok(a_d)
}

/// Shape b_d making the untruncated mean a_d/(a_d + b_d) equal p1:
/// b_d = (1 − p1) a_d / p1.
pub fn mean_centered_b(p1: f64, a_d: f64) -> Result<f64> {
    if !p1.is_finite() || p1 <= 0.0 || p1 >= 1.0 {
        return Err(Error::Domain(format!(
            "mean location p1 must lie in (0, 1), got {p1}"
        )));
    }
    if !a_d.is_finite() || a_d <= 0.0 {
        return Err(Error::Domain(format!(
            "mean centering requires a_d > 0, got {a_d}"
        )));
    }
    Ok((1.0 - p1) * a_d / p1)
}

/// Scales (a, b) to (m·a, m·b): the mean a/(a+b) is unchanged while the
/// variance shrinks like 1/m, so m → ∞ concentrates the prior at the mean.
pub fn scale_informativeness(a: f64, b: f64, m: f64) -> Result<(f64, f64)> {
    for (name, v) in [("a", a), ("b", b), ("m", m)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!(
                "{name} must be finite and positive, got {v}"
            )));
        }
    }
    Ok((m * a, m * b))
}
