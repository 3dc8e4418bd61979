use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("period {period} does not divide the level {level}")]
    NonDivisorPeriod { period: u64, level: u64 },
    #[error("exponent of period {period} is not an integer ({numerator}/{denominator})")]
    NonIntegralExponent {
        period: u64,
        numerator: i64,
        denominator: i64,
    },
    #[error("no power sum given for divisor {0}")]
    MissingNewtonSum(u64),
    #[error("frame shape is not a polynomial")]
    NotAPolynomial,
    #[error("polynomial is not a product of cyclotomic polynomials")]
    NotCyclotomicProduct,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("exponent R = {r} is not coprime to alpha = {alpha}")]
    NotCoprime { r: i64, alpha: u64 },
    #[error("exponent R is zero; beta and b must be supplied externally")]
    ZeroExponent,
    #[error("pole of order {order} at the primitive {alpha}-th root of unity is not simple")]
    NotSimplePole { alpha: u64, order: i64 },
    #[error("polynomial division left a nonzero remainder")]
    RemainderNonzero,
    #[error("multiplicities differ within the primitive class of order {order}")]
    NonGaloisStable { order: u64 },
    #[error("case precondition violated: {0}")]
    CaseViolation(String),
    #[error("unsupported root system label {0:?}")]
    UnsupportedLabel(String),
    #[error("determinant has a nonzero odd-degree coefficient at t^{0}")]
    OddPowerPresent(usize),
    #[error("null-space solution is not a positive integer vector")]
    NonIntegralDims,
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
