use thiserror::Error;

use crate::oracle::OracleReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quantile grid: {0}")]
    InvalidGrid(String),

    #[error("degenerate grid: standard deviation is zero")]
    DegenerateGrid,

    #[error("grid size mismatch: {left} vs {right}")]
    GridSizeMismatch { left: usize, right: usize },

    #[error("moment mismatch: grid has (mean {mean}, std {std}), expected ({mu}, {sigma})")]
    MomentMismatch {
        mean: f64,
        std: f64,
        mu: f64,
        sigma: f64,
    },

    #[error("invalid reference distribution: {0}")]
    InvalidReference(String),

    #[error("invalid distortion: {0}")]
    InvalidDistortion(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("sigma0 = 0: assumption A1 fails (spectral weights are constant)")]
    AssumptionA1Violated,

    #[error(
        "VaR weights are a point mass and violate assumption A1 in the continuum; \
         results depend on the grid (pass --allow-var to override)"
    )]
    VarRequiresOverride,

    #[error("distortion is not concave; the closed form needs monotone spectral weights")]
    NotConcave,

    #[error("radius {eps} outside the open interval ({eps_min}, {eps_max})")]
    RadiusOutOfRange { eps: f64, eps_min: f64, eps_max: f64 },

    #[error("epsilon below eps_min: set is empty (eps = {eps}, eps_min = {eps_min})")]
    InfeasibleRadius { eps: f64, eps_min: f64 },

    #[error("correlation with the reference is {rho}; the threshold is undefined when it reaches 1")]
    RhoDegenerate { rho: f64 },

    #[error(
        "assumption A4 violated: corr(F^-1, r_delta) not increasing between delta = {delta_lo} ({corr_lo}) \
         and delta = {delta_hi} ({corr_hi})"
    )]
    AssumptionA4Violated {
        delta_lo: f64,
        corr_lo: f64,
        delta_hi: f64,
        corr_hi: f64,
    },

    #[error("isotonic projection of the score has zero standard deviation")]
    DegenerateProjection,

    #[error("could not sample a feasible grid inside the ball after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("oracle verification failed: gap {gap}, {violations} violations", gap = report.gap, violations = report.violations)]
    VerificationFailed { report: Box<OracleReport> },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
