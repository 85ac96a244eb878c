use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NevaiError {
    #[error("argument {x} outside [-1, 1]")]
    Domain { x: f64 },

    #[error("kernel weights vanish at z = {z}; denominator underflowed to zero")]
    DegenerateDenominator { z: Complex64 },

    #[error("field has no derivative supplier; the Hermite family needs f^(j) for j = 0..r")]
    MissingDerivatives,

    #[error("integrand is not finite inside cell (k = {k}, m = {m})")]
    NonFiniteIntegrand { k: i64, m: i64 },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown function id `{0}`")]
    UnknownFunction(String),

    #[error("function `{function}` cannot be used with the {family} family")]
    InvalidPairing { function: String, family: String },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

pub type Result<T> = std::result::Result<T, NevaiError>;
