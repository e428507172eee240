use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidG: g = {0} is not one of 1, 2, 3, 4, 6")]
    InvalidG(i64),

    #[error("OddGMismatch: g = {g} is odd but m1 = {m1} differs from m2 = {m2}")]
    OddGMismatch { g: i64, m1: i64, m2: i64 },

    #[error("NonIntegerDimension: g*(m1+m2)/2 = {g}*{sum}/2 is not an integer")]
    NonIntegerDimension { g: i64, sum: i64 },

    #[error("InvalidMultiplicity: {0}")]
    InvalidMultiplicity(String),

    #[error("DomainError: {0}")]
    Domain(String),

    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("IndexError: {0}")]
    Index(String),

    #[error("NotInStiefel: {0}")]
    NotInStiefel(String),

    #[error("StepSizeUnderflow: step {step:e} at s = {s}")]
    StepSizeUnderflow { s: f64, step: f64 },

    #[error("NonFinite: state became non-finite at s = {s}")]
    NonFinite { s: f64 },

    #[error("TooFewSamples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("DegenerateMetric: det g = {det:e} at u = {at:?}")]
    DegenerateMetric { det: f64, at: Vec<f64> },

    #[error("NotCMC: mean curvature varies by {spread:e} over the chart (tolerance {tolerance:e})")]
    NotCmc { spread: f64, tolerance: f64 },

    #[error("NotConstantHr: H_{r} varies by {spread:e} over the chart (tolerance {tolerance:e})")]
    NotConstantHr { r: usize, spread: f64, tolerance: f64 },

    #[error("FrameInconsistent: contact-angle rows disagree by {residual:e}")]
    FrameInconsistent { residual: f64 },
}
