use num_bigint::BigInt;
use thiserror::Error;

use crate::series::HalfExp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exponent} is at or above the truncation bound {trunc}")]
    TruncationBound { exponent: HalfExp, trunc: HalfExp },

    #[error("lowest coefficient {coefficient} at exponent {exponent} is not a unit in Z")]
    NonUnit { exponent: HalfExp, coefficient: BigInt },

    #[error("cannot invert the zero series")]
    ZeroInverse,

    #[error("requested order {requested} exceeds available precision {available}")]
    InsufficientPrecision { requested: HalfExp, available: HalfExp },

    #[error("infinite product ({arg}; q^{step})_inf does not converge formally")]
    DivergentProduct { arg: String, step: HalfExp },

    #[error("pole: denominator factor vanishes ({0})")]
    Pole(String),

    #[error("series is not a Laurent polynomial in q (odd half-exponent {0})")]
    HalfIntegralExponent(HalfExp),

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("double sum did not settle below order {order} within index {cap}")]
    NonConvergence { order: HalfExp, cap: i64 },

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument {n} exceeds the enumeration bound {bound}")]
    OracleBound { n: usize, bound: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
