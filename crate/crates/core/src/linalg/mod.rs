//! Sparse exact linear algebra over `Q(i)`.

mod echelon;
mod matrix;
mod subspace;

use std::collections::BTreeMap;

pub use echelon::Echelon;
pub use matrix::SparseMatrix;
pub use subspace::Subspace;

use crate::exactnum::GaussRat;

/// Sparse vector: index to nonzero entry.
pub type SparseVec = BTreeMap<usize, GaussRat>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<GaussRat> {
    let mut out = vec![GaussRat::zero(); len];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

pub fn from_dense(v: &[GaussRat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Unit vector `e_i`.
pub fn unit(i: usize) -> SparseVec {
    SparseVec::from([(i, GaussRat::one())])
}

/// `acc += c * v`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &GaussRat, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in v {
        add_entry(acc, i, &(c * x));
    }
}

pub fn add_entry(acc: &mut SparseVec, i: usize, x: &GaussRat) {
    if x.is_zero() {
        return;
    }
    let slot = acc.entry(i).or_default();
    *slot += x;
    if slot.is_zero() {
        acc.remove(&i);
    }
}

pub fn scaled(v: &SparseVec, c: &GaussRat) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, x)| (i, x * c)).collect()
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> GaussRat {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter_map(|(i, x)| big.get(i).map(|y| x * y))
        .sum()
}
