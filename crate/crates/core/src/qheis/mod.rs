//! The q-deformed Heisenberg algebra `H(q)`, generated by `A`, `B` with
//! `AB - qBA = I`, and its q-combinatorics.

mod combinatorics;
mod expr;
mod identities;
mod normal;
mod parse;

pub use combinatorics::{
    q_binomial, q_binomial_closed, q_factorial, q_integer, q_reciprocal_checks,
    subset_sum_binomial_check, ReciprocalReport, SubsetSumReport,
};
pub use expr::{QExpr, Word};
pub use identities::{
    free_identity_check, q_zero_expected, q_zero_products, verify_generalized_jacobi,
    verify_powandprod, verify_powandprod_reciprocal, verify_suite, FreeIdentity, IdentityResult,
    JacobiKind, SuiteLimits, RECIPROCAL_POINTS,
};
pub use normal::{
    basis_word, normal_order, normal_order_at, verify_identity, Leftmost, NormalForm, RandomChoice,
    RewriteStrategy, Rightmost, Rule,
};
pub use parse::parse_expr;

use crate::exactnum::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QheisError {
    #[error("q must be nonzero here")]
    QZero,
    #[error("letter '{0}' is not a generator of H(q)")]
    ForeignLetter(char),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
