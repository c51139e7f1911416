use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("polytope needs at least one point")]
    EmptyInput,

    #[error("ragged input: point {index} has {found} coordinates, expected {expected}")]
    RaggedInput {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(i64),

    #[error("polytope is not a simplex ({vertices} vertices in dimension {dim})")]
    NotASimplex { vertices: usize, dim: usize },

    #[error("polytope is not integral (denominator {0})")]
    NotIntegral(String),

    #[error("expected a {expected}-dimensional polytope in ambient dimension {expected}, found dim {dim} in ambient {ambient}")]
    WrongDimension {
        expected: usize,
        dim: usize,
        ambient: usize,
    },

    #[error("need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("holdout validation failed at t = {t}: predicted {predicted}, counted {counted}")]
    HoldoutMismatch {
        t: i64,
        predicted: String,
        counted: String,
    },

    #[error("interpolated polynomial has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("h*-coefficient {index} is not an integer: {value}")]
    NonIntegralCoefficient { index: usize, value: String },

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("coordinates exceed the enumeration range")]
    EnumerationOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
