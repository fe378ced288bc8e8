use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=32")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} has degree {found}, expected {expected}")]
    DegreeMismatch { modulus: u64, expected: u32, found: u32 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    NotIrreducible(u64),
    #[error("element {bits:#x} does not fit in GF(2^{k})")]
    ElementOutOfRange { bits: u64, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{d} does not divide {k}; GF(2^{d}) is not a subfield")]
    NotASubfield { d: u32, k: u32 },
    #[error("operation requires an odd extension degree, got k = {0}")]
    OddDegreeRequired(u32),
    #[error("{what} = {value} out of range")]
    RangeError { what: &'static str, value: u64 },
    #[error("gcd(l = {l}, k = {k}) != 1")]
    NotCoprime { l: u32, k: u32 },
    #[error("element {0:#x} lies in GF(2^d)")]
    InSubfield(u32),
    #[error("delta {0:#x} is not a (2^d+1)-th root of unity")]
    BadRootOfUnity(u32),
    #[error("r = {0:#x} is not on the unit circle r^(2^k+1) = 1")]
    BadUnitCircle(u32),
    #[error("constant {0:#x} is not in GF(2^d)")]
    BadConstant(u32),
    #[error("polynomial has no roots")]
    NoRoots,
    #[error("field of 2^{k} elements exceeds the exhaustive cap of 2^{cap_bits}")]
    CapExceeded { k: u32, cap_bits: u32 },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("power test disagreement for r = {0:#x}")]
    PowerTestDisagreement(u32),
}
