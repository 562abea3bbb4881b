use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("q = {q} has multiplicative order {found} modulo p² = {p_squared}, expected p(p-1) = {expected}")]
    NotPrimitive {
        q: u64,
        p_squared: u64,
        found: u64,
        expected: u64,
    },

    #[error("truncation must be positive")]
    ZeroTruncation,

    #[error("value {value} is not p-local at p = {p} (valuation {valuation} < 0)")]
    NotPLocal {
        value: String,
        p: u64,
        valuation: i64,
    },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("Ψ^j undefined for non-unit j = {0} (valuation must be 0)")]
    NonUnitAdams(String),

    #[error("module is not discrete within the search bound {bound}")]
    NonDiscrete { bound: usize },

    #[error("invalid module presentation: {}", .0.join("; "))]
    InvalidModule(Vec<String>),

    #[error("element does not lie in the module: {0}")]
    InvalidElement(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("homomorphism is not surjective")]
    NotSurjective,

    #[error("map f is not in the kernel of γ")]
    NotInGammaKernel,

    #[error("search bound {bound} exceeded: {what}")]
    SearchBoundExceeded { what: String, bound: usize },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
