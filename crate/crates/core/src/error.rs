use thiserror::Error;

/// Errors raised by ring arithmetic, structure analysis and reduction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {0}")]
    Mismatch(String),
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("quotient by zero is not supported")]
    ZeroModulus,
    #[error("quotient by a unit is the zero ring")]
    UnitModulus,
    #[error("ring has {size} elements, above the cap of {cap}")]
    TooLarge { size: String, cap: u64 },
    #[error("ring is infinite; enumeration is not available")]
    Infinite,
    #[error("coprime-cofactor search exhausted after {0} candidates")]
    SearchExhausted(u64),
    #[error("input must be a nonzero non-unit, got {0}")]
    UnitOrZeroInput(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("elements are not comaximal: {0}")]
    NotComaximal(String),
    #[error("factorization budget exceeded: {0}")]
    FactorizationBudgetExceeded(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("internal trace invariant violated: {0}")]
    TraceInvariantViolation(String),
    #[error("no nontrivial idempotent in {0}")]
    NoNontrivialIdempotent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
