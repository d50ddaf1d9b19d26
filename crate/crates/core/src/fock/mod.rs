//! Truncated matrix realisations of q-deformed ladder operators.
//!
//! Exact work happens in the monomial basis, where `B` is a plain shift and
//! `A` carries the weights `{m}_q`; the orthonormal basis has irrational
//! entries and lives in [`float`].

mod cuntz;
pub mod float;
mod monomial;
mod pairs;

pub use cuntz::{cuntz_toeplitz, size_cap, CuntzFock, CuntzReport, DEFAULT_SIZE_CAP};
pub use float::{float_residual, float_triplets, orthonormal_rep_float, FloatResidual};
pub use monomial::{
    check_qccr, closed_form_spectrum, equal_below, expr_matrix, identity_on_interior, monomial_rep,
    number_operator_spectrum, q_int_at, qccr_defect, weighted_adjoint, DefectReport,
};
pub use pairs::{
    biorthogonal_pair, car_pair, pair_defect, pairing, shifted_pair, similarity_transport,
    BiorthogonalSystem, ShiftedPair, Transport, SHIFTED_LABELS,
};

use crate::qheis::QheisError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("truncation size {0} is too small")]
    SizeTooSmall(usize),
    #[error("space of dimension {dim} exceeds the size cap {cap} on dim^2")]
    SizeCap { dim: usize, cap: usize },
    #[error("weight {{{index}}}_q vanishes; use float mode")]
    SingularWeight { index: usize },
    #[error("weighted adjoint needs a real q")]
    ComplexParameter,
    #[error("weight t_{index} is not a positive rational")]
    NonpositiveWeight { index: usize },
    #[error("beta_{index}^2 is negative")]
    NegativeWeight { index: usize },
    #[error("similarity matrix is singular")]
    SingularT,
    #[error("alpha equals beta, so B coincides with A-dagger")]
    AlphaEqualsBeta,
    #[error("number operator is not diagonal")]
    NotDiagonal,
    #[error("commutator of operators {0} and {1} is not scalar on the interior")]
    NonScalarCommutator(usize, usize),
    #[error("operator sizes do not match")]
    DimensionMismatch,
    #[error(transparent)]
    Qheis(#[from] QheisError),
}
