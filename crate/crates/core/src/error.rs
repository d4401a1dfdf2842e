use thiserror::Error;

/// Errors raised while building or evaluating splines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("nodes must be strictly increasing (x[{index}] = {value} does not exceed its predecessor)")]
    NonMonotone { index: usize, value: f64 },

    #[error("non-finite input at index {index}")]
    NonFinite { index: usize },

    #[error("need at least {required} nodes, got {got}")]
    TooFewNodes { required: usize, got: usize },

    #[error("division by zero")]
    DivideByZero,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("x = {x} lies outside [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("derivative order {deriv} is not available (max {max})")]
    UnsupportedDerivative { deriv: usize, max: usize },

    #[error("tension parameter must be positive and finite, got {0}")]
    InvalidTension(f64),

    #[error("alpha * max|x| = {scaled} exceeds the representable range ({limit})")]
    Overflow { scaled: f64, limit: f64 },

    #[error("tension too large: tridiagonal system lost diagonal dominance (margin {margin:e})")]
    TensionTooLarge { margin: f64 },

    #[error("system is not diagonally dominant (margin {margin:e})")]
    NotDominant { margin: f64 },

    #[error("local system on interval {interval} is singular (determinant {det:e})")]
    SingularLocalSystem { interval: usize, det: f64 },

    #[error("dense system is singular (pivot ratio estimate {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("dense system too large: {intervals} intervals (limit {limit})")]
    DenseTooLarge { intervals: usize, limit: usize },

    #[error("error sequence hits the floor ({value:e} at index {index}); order is undefined")]
    DegenerateErrors { index: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SplineError>;
