//! Exact arithmetic tower: rationals, polynomials, rational functions,
//! exponential polynomials and Wronskians. Nothing here touches floating
//! point except explicit `to_f64` conversions.

mod exppoly;
mod poly;
mod ratfunc;
mod rational;
mod wronskian;

pub use exppoly::{ExpPoly, ExpRatFunc};
pub use poly::{Poly, RingOp};
pub use ratfunc::{FieldOp, RatFunc};
pub use rational::BigRat;
pub use wronskian::{bareiss_det, wronskian};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation needs a single exponential term")]
    NotSingleTerm,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
