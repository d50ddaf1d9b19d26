//! Exact scalars over the Gaussian rationals and Laurent polynomials in a
//! single formal parameter.

pub mod gauss;
pub mod laurent;

pub use gauss::GaussRat;
pub use laurent::{LaurentPoly, Param};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot evaluate a polynomial with negative powers at zero")]
    EvalAtZeroWithNegativeDegree,
    #[error("polynomial division leaves a nonzero remainder")]
    NonDivisible,
    #[error("parse error: {0}")]
    Parse(String),
}
