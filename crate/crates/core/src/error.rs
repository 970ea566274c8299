use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be a positive integer, got {0}")]
    InvalidModulus(u64),

    #[error("duplicate element {element} (after reduction mod {n})")]
    DuplicateElement { element: u64, n: u64 },

    #[error("multiset over Z_{n} needs {n} counts, got {got}")]
    CountLength { n: u64, got: usize },

    #[error("operands live in different groups: Z_{left} vs Z_{right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("gcd({m}, {n}) = {gcd}, expected coprime arguments")]
    NotCoprime { m: u64, n: u64, gcd: u64 },

    #[error("the exponential sum does not vanish: {0}")]
    NonVanishing(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("modulus {n} does not have the required shape: {expected}")]
    WrongModulusShape { n: u64, expected: String },

    #[error("construction produced an invalid witness: {0}")]
    ConstructionFailed(String),

    #[error("discrepancy: {0}")]
    Discrepancy(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("cache file {path} is inconsistent: {reason}")]
    CorruptCache { path: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
