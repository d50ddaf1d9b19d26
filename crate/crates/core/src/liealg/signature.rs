use serde::{Deserialize, Serialize};

use super::series::{derived_series, dims, lower_central_series, upper_central_series};
use super::LieAlgebra;
use crate::cohomology::{cohomology_dim, derivation_algebra, Representation};

/// Isomorphism invariants; equal signatures are necessary for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub dim: usize,
    pub lcs: Vec<usize>,
    pub ucs: Vec<usize>,
    pub derived: Vec<usize>,
    pub center: usize,
    pub der: usize,
    pub h1: usize,
    pub h2: usize,
    pub abelian: bool,
    pub nilpotency_class: Option<usize>,
    pub derived_length: Option<usize>,
}

impl InvariantSignature {
    /// `dim [g, g]`.
    pub fn derived_dim(&self) -> usize {
        match self.derived.as_slice() {
            [] => 0,
            [only] => *only,
            [_, second, ..] => *second,
        }
    }
}

pub fn invariant_signature(g: &LieAlgebra) -> InvariantSignature {
    let lcs = dims(&lower_central_series(g));
    let derived = dims(&derived_series(g));
    let der = derivation_algebra(g);
    let terminal = |s: &[usize]| match s.last() {
        None => Some(0),
        Some(0) => Some(s.len() - 1),
        Some(_) => None,
    };
    InvariantSignature {
        dim: g.dim(),
        nilpotency_class: terminal(&lcs),
        derived_length: terminal(&derived),
        lcs,
        ucs: dims(&upper_central_series(g)),
        derived,
        center: g.center().dim(),
        der: der.dim(),
        h1: der.outer_dim(),
        h2: cohomology_dim(&Representation::adjoint(g), 2),
        abelian: g.is_abelian(),
    }
}
