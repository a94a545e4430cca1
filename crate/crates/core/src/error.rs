use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1 (got {0})")]
    BadDegree(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("even characteristic unsupported")]
    EvenCharacteristic,
    #[error("budget exceeded after {0} reductions")]
    BudgetExceeded(u64),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("incompatible extension degree: {0}")]
    IncompatibleExtension(String),
    #[error("bad prime {0}: all coefficients vanish")]
    BadPrime(u64),
    #[error("infinitely many lines (non-smooth or ruled reduction) in chart {0:?}")]
    InfinitelyManyLines((usize, usize)),
    #[error("dependent plane pair")]
    DependentPlanes,
    #[error("identical lines have no isolated intersection point")]
    IdenticalLines,
    #[error("subset too small: need at least 2 lines, got {0}")]
    SubsetTooSmall(usize),
    #[error("unknown format '{0}'")]
    UnknownFormat(String),
    #[error("slope undefined: second log Chern number is zero")]
    SlopeUndefined,
    #[error("pencil: t_{0} > 0")]
    Pencil(u32),
    #[error("unknown catalog entry '{name}'; known entries: {known}")]
    UnknownCatalog { name: String, known: String },
    #[error("enumeration too large: estimated {estimated} candidates exceeds budget {budget}")]
    SearchTooLarge { estimated: u128, budget: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
