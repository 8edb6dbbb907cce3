use thiserror::Error;

/// Errors raised by the algebraic and stochastic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),

    #[error("standing assumption violated: 1 + beta*gamma*[{n}] = 0")]
    StandingAssumption { n: usize },

    #[error("beta must be nonzero for the rewritten form")]
    BetaZero,

    #[error("constraint {0} does not hold for the given parameters")]
    ConstraintNotSatisfied(&'static str),

    #[error("spectral parameters must be pairwise distinct and nonzero")]
    DegenerateSpectrum,

    #[error("spectral parameter hits a pole of the one-particle factor")]
    SpectralPole,

    #[error("invalid stochastic parameters: {0}")]
    InvalidStochasticParams(String),

    #[error("invalid jump: r = {r} particles from a cluster of size {c}")]
    InvalidJump { c: usize, r: usize },

    #[error("polynomial division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("truncated probability mass {lost:e} exceeds bound {bound:e} at displacement {displacement}")]
    TruncationBound { lost: f64, bound: f64, displacement: usize },

    #[error("no valid sample point found after {0} attempts")]
    SamplingExhausted(usize),

    #[error("cannot parse {0:?} as an exact rational (expected num or num/den)")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
