use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A universal-polynomial recursion produced a coefficient that is not
    /// divisible by the expected integer. Always a bug in the recursion.
    #[error("coefficient of {monomial} is not divisible by {divisor}")]
    NotDivisible { monomial: String, divisor: BigInt },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("resource limit exceeded: {requested} basis tuples requested, limit is {limit}")]
    ResourceLimit { requested: u128, limit: usize },

    #[error("ring is not {p}-local: {n} is not invertible")]
    NotPLocal { p: u64, n: u64 },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
