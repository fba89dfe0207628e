use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be a positive integer")]
    InvalidModulus(BigInt),

    #[error("invalid residue {0}: must be a positive integer")]
    InvalidResidue(BigInt),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{what} {value} out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: BigInt,
        min: BigInt,
        max: BigInt,
    },

    #[error("arrangement has {m} hyperplanes, above the subset-enumeration cap of {cap}")]
    TooManyHyperplanes { m: usize, cap: usize },

    #[error("brute-force enumeration needs {points} points, above the budget of {budget}")]
    EnumerationBudget { points: BigInt, budget: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Validates that `q` is a positive modulus.
pub(crate) fn modulus(q: impl Into<BigInt>) -> Result<BigInt> {
    let q = q.into();
    if q < BigInt::from(1) {
        return Err(Error::InvalidModulus(q));
    }
    Ok(q)
}

pub(crate) fn residue(a: impl Into<BigInt>) -> Result<BigInt> {
    let a = a.into();
    if a < BigInt::from(1) {
        return Err(Error::InvalidResidue(a));
    }
    Ok(a)
}
