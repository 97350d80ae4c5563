use thiserror::Error;

/// Errors produced by the design engine and its numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The continued fraction for the regularized incomplete beta function
    /// did not converge within the iteration cap.
    #[error("incomplete beta continued fraction did not converge for x={x}, a={a}, b={b}")]
    NonConvergence { x: f64, a: f64, b: f64 },

    /// The inverse incomplete beta iteration could not reach its tolerance.
    #[error("inverse incomplete beta did not converge for q={q}, a={a}, b={b}")]
    InverseNonConvergence { q: f64, a: f64, b: f64 },

    /// Mode requested for a truncated Beta without a unique interior mode.
    #[error("truncated Beta mode requires a > 1 and b > 1 (got a={a}, b={b})")]
    NoUniqueMode { a: f64, b: f64 },

    /// Mode centering produced a shape parameter that is not > 1.
    #[error("degenerate mode centering: computed a_d={a_d} is not > 1")]
    DegenerateCentering { a_d: f64 },

    /// A prior specification string could not be parsed.
    #[error("invalid prior specification `{0}`: {1}")]
    ParsePrior(String, String),

    /// A design configuration violates its invariants.
    #[error("invalid design configuration: {0}")]
    Config(String),

    /// No sample size within the search range meets the requested target.
    #[error(
        "{metric} target {target} not attainable within n_max={n_max}; best value seen was {best}"
    )]
    SampleSizeNotAttainable {
        metric: &'static str,
        target: f64,
        n_max: u64,
        best: f64,
    },

    /// No evidence threshold in the search range meets the requested target.
    #[error("{metric} target {target} not attainable for any threshold k in ({lo}, {hi}); best value seen was {best}")]
    ThresholdNotAttainable {
        metric: &'static str,
        target: f64,
        lo: f64,
        hi: f64,
        best: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
