use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial coefficient with negative upper index {0}")]
    NegativeBinomialTop(i64),

    #[error("linear system has no unique solution")]
    SingularSystem,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishesModP(u64),

    #[error("duplicate interpolation abscissa k = {0}")]
    DuplicateAbscissa(i64),

    #[error("monomials of inconsistent length: expected {expected}, found {found}")]
    InconsistentLength { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Hilbert numerator is not of linear shape: {0}")]
    NotLinearShape(String),

    #[error("held-out point k = {k} disagrees: fitted {fitted}, observed {observed}")]
    HeldOutMismatch {
        k: i64,
        fitted: String,
        observed: String,
    },

    #[error("closed form disagrees with enumeration: {0}")]
    ClosedFormMismatch(String),

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}
