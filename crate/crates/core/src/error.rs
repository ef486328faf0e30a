use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integrand degree {degree} must be below pole order minus one ({pole_order} - 1)")]
    DegreeTooHigh { degree: usize, pole_order: usize },
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("singular 2x2 system")]
    SingularSystem,
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("bisection did not reach tolerance {tol} in {iterations} iterations")]
    MaxIterations { tol: f64, iterations: usize },
    #[error("no sign change found after {doublings} outward doublings")]
    ScaleOverflow { doublings: usize },

    #[error("invalid orbifold data: {0}")]
    InvalidOrbifold(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("orbifold is not log Fano")]
    NotLogFano,
    #[error("sign of r{index} does not match sign of n{index}")]
    SignMismatch { index: usize },
    #[error("class is not admissible: {0}")]
    NotAdmissible(String),
    #[error("twist n1*n2 is zero")]
    ZeroTwist,
    #[error("wrong sign regime: {0}")]
    WrongSignRegime(String),
    #[error("|b| must exceed 1")]
    BOutOfRange,
    #[error("class is not primitive")]
    NotPrimitive,
    #[error("class is not Kähler")]
    NotKahler,
    #[error("class has non-integer coefficients")]
    NonIntegerClass,
    #[error("gcd(m0, minf, |n|) = {0}, expected 1")]
    GcdHypothesisFailed(u64),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("no CSC ray root found although f(r1, r2) != 0")]
    NoRootFound,
}

impl Error {
    /// True for failures that indicate falsified mathematics or a bug rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInconsistency(_) | Error::NoRootFound)
    }
}
