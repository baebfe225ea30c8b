use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero value in {0}")]
    ZeroValue(&'static str),

    #[error("could not factor {cofactor} within the effort budget")]
    FactorizationFailure { cofactor: BigUint },

    #[error("exponent overflow on prime {prime}")]
    ExponentOverflow { prime: BigUint },

    #[error("{0} is not prime")]
    NotPrime(BigUint),

    #[error("primality of {0} could not be certified")]
    PrimalityUnknown(BigUint),

    #[error("exponent of {prime} must be nonzero")]
    ZeroExponent { prime: BigUint },

    #[error("prime {0} appears more than once")]
    DuplicatePrime(BigUint),

    #[error("{0} is not a positive integer (negative exponent)")]
    NotAnInteger(String),
}

impl Error {
    /// Errors caused by inputs beyond what the artifact can handle, as opposed
    /// to malformed inputs.
    pub fn is_scale_error(&self) -> bool {
        matches!(
            self,
            Error::FactorizationFailure { .. }
                | Error::ExponentOverflow { .. }
                | Error::PrimalityUnknown(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
