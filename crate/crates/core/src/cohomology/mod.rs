//! Chevalley–Eilenberg cochains with values in a representation.

mod cochain;
mod derivations;

use std::collections::HashMap;

pub use cochain::{Cochain, CochainDoc};
pub use derivations::{derivation_algebra, flatten, is_derivation, unflatten, DerivationAlgebra};

use crate::exactnum::GaussRat;
use crate::liealg::LieAlgebra;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("cochain and representation belong to different algebras or modules")]
    SourceMismatch,
    #[error("matrices do not form a representation: bracket of e{0} and e{1} is not preserved")]
    NotARepresentation(usize, usize),
    #[error("expected {expected} matrices of size {size}x{size}")]
    BadMatrices { expected: usize, size: usize },
    #[error("degree {degree} exceeds algebra dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },
    #[error("invalid cochain document: {0}")]
    Document(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Adjoint,
    Trivial,
    Explicit,
}

/// A representation `ρ: g -> gl(V)`, one matrix per basis vector.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: LieAlgebra,
    module_dim: usize,
    matrices: Vec<SparseMatrix>,
    kind: RepKind,
}

impl Representation {
    pub fn adjoint(g: &LieAlgebra) -> Self {
        Representation {
            algebra: g.clone(),
            module_dim: g.dim(),
            matrices: (0..g.dim()).map(|i| g.ad(i)).collect(),
            kind: RepKind::Adjoint,
        }
    }

    pub fn trivial(g: &LieAlgebra, module_dim: usize) -> Self {
        Representation {
            algebra: g.clone(),
            module_dim,
            matrices: vec![SparseMatrix::zeros(module_dim, module_dim); g.dim()],
            kind: RepKind::Trivial,
        }
    }

    pub fn explicit(g: &LieAlgebra, matrices: Vec<SparseMatrix>) -> Result<Self, CohomologyError> {
        let size = matrices.first().map_or(0, SparseMatrix::nrows);
        if matrices.len() != g.dim()
            || matrices
                .iter()
                .any(|m| m.nrows() != size || m.ncols() != size)
        {
            return Err(CohomologyError::BadMatrices {
                expected: g.dim(),
                size,
            });
        }
        let rep = Representation {
            algebra: g.clone(),
            module_dim: size,
            matrices,
            kind: RepKind::Explicit,
        };
        rep.check_bracket_preserved()?;
        Ok(rep)
    }

    /// `ρ([e_i, e_j]) = [ρ(e_i), ρ(e_j)]` for all `i < j`.
    pub fn check_bracket_preserved(&self) -> Result<(), CohomologyError> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.rho(&self.algebra.bracket_basis(i, j))
                    != self.matrices[i].commutator(&self.matrices[j])
                {
                    return Err(CohomologyError::NotARepresentation(i, j));
                }
            }
        }
        Ok(())
    }

    /// `ρ(x)` for a general element `x`.
    pub fn rho(&self, x: &SparseVec) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.module_dim, self.module_dim);
        for (&i, c) in x {
            out = &out + &self.matrices[i].scale(c);
        }
        out
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.matrices
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }
}

/// Strictly increasing `k`-tuples of `0..n` in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Coordinates of `C^k(g, V)`: index `tuple_index * m + component`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    n: usize,
    degree: usize,
    module_dim: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl CochainSpace {
    pub fn new(n: usize, degree: usize, module_dim: usize) -> Self {
        let tuples = increasing_tuples(n, degree);
        let index = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        CochainSpace {
            n,
            degree,
            module_dim,
            tuples,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.module_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn tuple_index(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn coord(&self, tuple_index: usize, component: usize) -> usize {
        tuple_index * self.module_dim + component
    }
}

/// Matrix of `d: C^k -> C^{k+1}`.
///
/// `(dc)(x_0..x_k) = Σ_i (-1)^i ρ(x_i) c(..x̂_i..)
///                 + Σ_{i<j} (-1)^{i+j} c([x_i,x_j], ..x̂_i..x̂_j..)`
pub fn differential_matrix(rep: &Representation, k: usize) -> SparseMatrix {
    let g = rep.algebra();
    let (n, m) = (g.dim(), rep.module_dim());
    let src = CochainSpace::new(n, k, m);
    let dst = CochainSpace::new(n, k + 1, m);
    let mut out = SparseMatrix::zeros(dst.dim(), src.dim());
    let sign = |e: usize| {
        if e.is_multiple_of(2) {
            GaussRat::one()
        } else {
            GaussRat::from_int(-1)
        }
    };
    for (xi, x) in dst.tuples().iter().enumerate() {
        let mut rows: Vec<SparseVec> = vec![SparseVec::new(); m];
        for i in 0..x.len() {
            let rest: Vec<usize> = x
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i)
                .map(|(_, &v)| v)
                .collect();
            let t = src
                .tuple_index(&rest)
                .expect("sub-tuple of an increasing tuple");
            let s = sign(i);
            for (b, row) in rep.matrices()[x[i]].rows().iter().enumerate() {
                for (&a, r) in row {
                    crate::linalg::add_entry(&mut rows[b], src.coord(t, a), &(&s * r));
                }
            }
        }
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let br = g.bracket_basis(x[i], x[j]);
                if br.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = x
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &v)| v)
                    .collect();
                for (&l, c) in &br {
                    let Err(pos) = rest.binary_search(&l) else {
                        continue;
                    };
                    let mut t = rest.clone();
                    t.insert(pos, l);
                    let ti = src.tuple_index(&t).expect("increasing tuple");
                    let coef = &(&sign(i + j + pos) * c);
                    for (b, row) in rows.iter_mut().enumerate() {
                        crate::linalg::add_entry(row, src.coord(ti, b), coef);
                    }
                }
            }
        }
        for (b, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                out.set(dst.coord(xi, b), c, v);
            }
        }
    }
    out
}

pub fn cocycle_space(rep: &Representation, k: usize) -> Subspace {
    differential_matrix(rep, k).nullspace()
}

pub fn coboundary_space(rep: &Representation, k: usize) -> Subspace {
    if k == 0 {
        let dim = CochainSpace::new(rep.algebra().dim(), 0, rep.module_dim()).dim();
        return Subspace::zero(dim);
    }
    differential_matrix(rep, k - 1).column_space()
}

/// Dimensions of `C^k`, `Z^k`, `B^k`, `H^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BettiRow {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

pub fn betti_row(rep: &Representation, k: usize) -> BettiRow {
    let n = rep.algebra().dim();
    let cochains = CochainSpace::new(n, k, rep.module_dim()).dim();
    let rank_out = if k < n {
        differential_matrix(rep, k).rank()
    } else {
        0
    };
    let coboundaries = if k == 0 {
        0
    } else {
        differential_matrix(rep, k - 1).rank()
    };
    let cocycles = cochains - rank_out;
    BettiRow {
        degree: k,
        cochains,
        cocycles,
        coboundaries,
        cohomology: cocycles - coboundaries,
    }
}

pub fn cohomology_dim(rep: &Representation, k: usize) -> usize {
    betti_row(rep, k).cohomology
}

pub fn betti_table(rep: &Representation) -> Vec<BettiRow> {
    let n = rep.algebra().dim();
    let ranks: Vec<usize> = (0..n).map(|k| differential_matrix(rep, k).rank()).collect();
    (0..=n)
        .map(|k| {
            let cochains = CochainSpace::new(n, k, rep.module_dim()).dim();
            let cocycles = cochains - ranks.get(k).copied().unwrap_or(0);
            let coboundaries = if k == 0 { 0 } else { ranks[k - 1] };
            BettiRow {
                degree: k,
                cochains,
                cocycles,
                coboundaries,
                cohomology: cocycles - coboundaries,
            }
        })
        .collect()
}

/// `dim H²(g, g; ad)`.
pub fn schur_multiplier_dim(g: &LieAlgebra) -> usize {
    cohomology_dim(&Representation::adjoint(g), 2)
}

/// Composes `d_{k+1} ∘ d_k` and checks it vanishes.
pub fn d_squared_check(rep: &Representation, k: usize) -> bool {
    let n = rep.algebra().dim();
    if k + 2 > n {
        return true;
    }
    (&differential_matrix(rep, k + 1) * &differential_matrix(rep, k)).is_zero()
}

/// Cyclic cocycle condition for trivial coefficients:
/// `θ([x,y],z) + θ([z,x],y) + θ([y,z],x) = 0` on every basis triple.
pub fn is_two_cocycle_trivial_coeffs(
    g: &LieAlgebra,
    theta: &Cochain,
) -> Result<bool, CohomologyError> {
    if theta.degree() != 2 || theta.algebra_dim() != g.dim() {
        return Err(CohomologyError::SourceMismatch);
    }
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc = SparseVec::new();
                for (a, b, c) in [(i, j, k), (k, i, j), (j, k, i)] {
                    for (&l, coef) in &g.bracket_basis(a, b) {
                        crate::linalg::axpy(&mut acc, coef, &theta.eval_basis(&[l, c]));
                    }
                }
                if !acc.is_empty() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
