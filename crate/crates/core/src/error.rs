use thiserror::Error;

/// Errors raised by the finite-field engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("field degree must be positive")]
    ZeroDegree,
    #[error("field of {size} elements exceeds the table cap of {cap}")]
    TableCapExceeded { size: u64, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("{target} does not divide the field degree {degree}")]
    NotADivisor { degree: u32, target: u32 },
    #[error("GF({p}^{small}) is not a subfield of GF({p2}^{big})")]
    NotASubfield { p: u32, small: u32, p2: u32, big: u32 },
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadCoordinates { got: usize, expected: usize },
    #[error("internal field error: {0}")]
    Internal(String),
}

/// Errors raised by the closed-form parameter calculators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("parameter identity violated: {0}")]
    IdentityViolated(String),
    #[error("inexact division in {0}")]
    InexactDivision(String),
    #[error("discriminant {0} is not a perfect square")]
    DeltaNotSquare(String),
    #[error("invalid parameters: {0}")]
    InvalidRange(String),
    #[error("value does not fit in 128 bits: {0}")]
    Overflow(String),
}

/// Top-level error type of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("invalid tower parameters: {0}")]
    InvalidParams(String),
    #[error("not a subspace: {0}")]
    NotASubspace(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    #[error("character spectrum is not two-valued: {0}")]
    SpectrumNotTwoValued(String),
    #[error("set is not closed under scalar multiplication; witness {0}")]
    NotScaleClosed(String),
    #[error("malformed set file: {0}")]
    Format(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::Field(FfError::TableCapExceeded { .. })
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
