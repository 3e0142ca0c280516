use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimension {0}: {1}")]
    InvalidDimension(usize, &'static str),

    #[error("form is not antisymmetric (symmetric part {0:.3e})")]
    NotAntisymmetric(f64),

    #[error("spin factor {index} has norm {norm}, expected 1")]
    NonUnitFactor { index: usize, norm: f64 },

    #[error("spin element needs an even number of factors, got {0}")]
    OddFactorCount(usize),

    #[error("internal consistency check failed: {what} residual {residual:.3e}")]
    Residual { what: &'static str, residual: f64 },

    #[error("degenerate spinor: {0}")]
    Degenerate(String),

    #[error("mode {0:?} lies outside the cutoff")]
    ModeOutsideCutoff(Vec<i64>),

    #[error("complex structure is undefined on summand {0}")]
    JUndefined(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
