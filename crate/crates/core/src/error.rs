use thiserror::Error;

/// Reasons a string or integer list is not a gamma list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("could not parse integer list")]
    Syntax,
    #[error("gamma list needs at least 3 entries")]
    TooShort,
    #[error("zero entry")]
    ZeroEntry,
    #[error("entries do not sum to zero")]
    NonzeroSum,
    #[error("canceling pair")]
    CancelingPair,
    #[error("common divisor greater than 1")]
    CommonDivisor,
    #[error("fewer positive than negative entries (s < r); negate the list")]
    MoreNegative,
}

impl GammaError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            GammaError::Syntax => "syntax",
            GammaError::TooShort => "too_short",
            GammaError::ZeroEntry => "zero_entry",
            GammaError::NonzeroSum => "nonzero_sum",
            GammaError::CancelingPair => "canceling_pair",
            GammaError::CommonDivisor => "common_divisor",
            GammaError::MoreNegative => "s_less_than_r",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid gamma list: {0}")]
    Gamma(#[from] GammaError),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("zero entry in kernel input vector")]
    ZeroInKernelInput,
    #[error("enumeration budget exceeded: {cells} cells > limit {limit}")]
    BudgetExceeded { cells: u128, limit: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{k} exceeds the limit {limit}")]
    FieldLimit { p: u64, k: u32, limit: u64 },
    #[error("bad prime {0}: divides an entry of the gamma list")]
    BadPrime(u64),
    #[error("parameter t has bad reduction modulo {0}")]
    BadReduction(u64),
    #[error("prime {p} is below the bound for this family (needs p > {bound})")]
    FamilyPrime { p: u64, bound: u64 },
    #[error("gamma list does not match the {0} family")]
    FamilyMismatch(&'static str),
    #[error("trace rounding residual {residual:.3e} exceeds tolerance")]
    RoundingResidual { residual: f64 },
    #[error("Gauss sum error bound {bound:.3e} exceeds tolerance {tolerance:.3e}")]
    GaussSumAccuracy { bound: f64, tolerance: f64 },
    #[error("slow computation refused; pass --allow-slow")]
    SlowRefused,
    #[error("no unique functional-equation sign is consistent with the traces")]
    NoConsistentSign,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Gamma(g) => g.code(),
            Error::InexactDivision => "inexact_division",
            Error::ZeroInKernelInput => "zero_entry",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotPrime(_) => "not_prime",
            Error::FieldLimit { .. } => "field_limit",
            Error::BadPrime(_) => "bad_prime",
            Error::BadReduction(_) => "bad_reduction",
            Error::FamilyPrime { .. } => "family_prime",
            Error::FamilyMismatch(_) => "family_mismatch",
            Error::RoundingResidual { .. } => "rounding_residual",
            Error::GaussSumAccuracy { .. } => "gauss_sum_accuracy",
            Error::SlowRefused => "slow_refused",
            Error::NoConsistentSign => "no_consistent_sign",
            Error::Invalid(_) => "invalid_argument",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
