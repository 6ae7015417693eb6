use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("extension modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("{what} of size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("operands live in different rings ({0} vs {1})")]
    MixedRings(String, String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not an R-automorphism of R[x]")]
    NotAutomorphism(String),
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("ring {0} is not local")]
    NotLocal(String),
    #[error("ring {0} is a field")]
    IsAField(String),
    #[error("no CRT factorization available for {0}")]
    FactorizationUnavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not triangular: {0}")]
    NotTriangular(String),
    #[error("membership violation at index {index}: {reason}")]
    MembershipViolation { index: usize, reason: String },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
