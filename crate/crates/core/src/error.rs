use thiserror::Error;

/// Failures of the jet arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("variable index {0} out of range (expected 0..4)")]
    VariableOutOfRange(usize),
    #[error("multi-index degree {0} exceeds the truncation order")]
    DegreeTooHigh(usize),
    #[error("jet depth exhausted: derivative requested beyond retained order")]
    DepthExhausted,
    #[error("division by a jet with zero value")]
    DivideByZero,
    #[error("{op} is undefined at value {value}")]
    Domain { op: &'static str, value: f64 },
}

/// Failures while evaluating geometry at a single point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("metric is singular or not positive definite (smallest eigenvalue {0:e})")]
    SingularMetric(f64),
    #[error("form rank {0} exceeds the dimension")]
    RankOverflow(usize),
    #[error("|∇Ω|² = {0:e} is below the gauge threshold")]
    GaugeDegenerate(f64),
    #[error("w = {0} is not positive")]
    Positivity(f64),
    #[error("{0}")]
    Invalid(String),
}

/// Failures while building or sampling an instance.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("expression parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}` in expression")]
    UnknownVariable(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("sampling exhausted: accepted {accepted} of {requested} after {tried} candidates")]
    SamplingExhausted {
        requested: usize,
        accepted: usize,
        tried: usize,
    },
}
