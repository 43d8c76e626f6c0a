use thiserror::Error;

/// Text-format parse failure with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at position {position})")]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError { message: message.into(), position }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("a denominator or logarithm argument vanishes at the sample point")]
    DenominatorVanishes,
    #[error("point does not assign variable {0}")]
    MissingVariable(String),
    #[error("expression is not a rational function: {0}")]
    NotRational(String),
    #[error("gradient not supported: {0}")]
    UnsupportedGradient(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid size M = {0}")]
    InvalidSize(usize),
    #[error("canonical form violated ({constraint}): {detail}")]
    CanonicalFormViolation { constraint: String, detail: String },
    #[error("characteristic matrices are not linearly nilindependent")]
    NilindependenceViolation,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("Jacobi identity fails for ({0}, {1}, {2})")]
    JacobiViolation(String, String, String),
    #[error("malformed algebra description: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("index out of range: {0}")]
    RangeError(String),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("n-derivatives survive in the combined operator: {0}")]
    ResidualNDerivative(String),
    #[error("degenerate exponent ratio: {0}")]
    DegenerateExponent(String),
    #[error("{0} consecutive sample points hit a vanishing denominator")]
    TooManyBadSamples(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
