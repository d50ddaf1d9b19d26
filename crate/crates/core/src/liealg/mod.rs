//! Finite-dimensional Lie algebras given by structure constants.

mod json;
mod series;
mod signature;

use std::collections::BTreeMap;
use std::fmt;

pub use json::{AlgebraDoc, BracketEntry};
pub use series::{derived_series, dims, lower_central_series, upper_central_series};
pub use signature::{invariant_signature, InvariantSignature};

use crate::exactnum::{ExactError, GaussRat};
use crate::linalg::{self, axpy, scaled, SparseMatrix, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket of basis vector {0} with itself must vanish")]
    DiagonalBracket(usize),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("invalid algebra document: {0}")]
    Document(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// First basis triple on which the Jacobi identity fails, with its residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiWitness {
    /// Zero-based indices `i < j < k`.
    pub triple: (usize, usize, usize),
    pub residual: SparseVec,
}

impl fmt::Display for JacobiWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "Jacobi fails on ({}, {}, {}):", i + 1, j + 1, k + 1)?;
        for (idx, c) in &self.residual {
            write!(f, " {}*e{}", c, idx + 1)?;
        }
        Ok(())
    }
}

/// A Lie algebra (or candidate bracket) on `Q(i)^dim`.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; the rest follow from
/// antisymmetry.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("v{i}")).collect()
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            labels: default_labels(dim),
            brackets: BTreeMap::new(),
        }
    }

    /// Builds an algebra from zero-based `(i, j, [e_i, e_j])` entries. Entries
    /// with `i > j` are stored as `-[e_j, e_i]`; repeated pairs accumulate.
    pub fn new(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self, LieError> {
        let labels = labels.unwrap_or_else(|| default_labels(dim));
        if labels.len() != dim {
            return Err(LieError::LabelCount {
                expected: dim,
                got: labels.len(),
            });
        }
        let mut g = LieAlgebra {
            dim,
            labels,
            brackets: BTreeMap::new(),
        };
        for (i, j, v) in entries {
            for &idx in [i, j].iter().chain(v.keys()) {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                if v.is_empty() {
                    continue;
                }
                return Err(LieError::DiagonalBracket(i));
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), scaled(&v, &GaussRat::from_int(-1)))
            };
            let slot = g.brackets.entry(key).or_default();
            axpy(slot, &GaussRat::one(), &v);
        }
        g.brackets.retain(|_, v| !v.is_empty());
        Ok(g)
    }

    /// Integer structure constants with one-based indices: `(i, j, k, c)`
    /// contributes `c * e_k` to `[e_i, e_j]`.
    pub fn from_constants(
        dim: usize,
        labels: Option<Vec<String>>,
        constants: &[(usize, usize, usize, i64)],
    ) -> Self {
        let entries = constants.iter().map(|&(i, j, k, c)| {
            (
                i - 1,
                j - 1,
                SparseVec::from([(k - 1, GaussRat::from_int(c))]),
            )
        });
        Self::new(dim, labels, entries).expect("valid structure constants")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::LabelCount {
                expected: self.dim,
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Nonzero stored brackets `[e_i, e_j]`, `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        self.brackets.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[e_i, e_j]` for arbitrary basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| scaled(v, &GaussRat::from_int(-1)))
                .unwrap_or_default(),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if i != j {
                    axpy(&mut out, &(a * b), &self.bracket_basis(i, j));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[GaussRat], y: &[GaussRat]) -> Result<Vec<GaussRat>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let out = self.bracket_sparse(&linalg::from_dense(x), &linalg::from_dense(y));
        Ok(linalg::to_dense(&out, self.dim))
    }

    /// `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.bracket_basis(i, j)).collect();
        SparseMatrix::from_columns(self.dim, &cols)
    }

    pub fn ad_of(&self, x: &SparseVec) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim)
            .map(|j| self.bracket_sparse(x, &linalg::unit(j)))
            .collect();
        SparseMatrix::from_columns(self.dim, &cols)
    }

    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket_basis(b, c);
            axpy(
                &mut out,
                &GaussRat::one(),
                &self.bracket_sparse(&linalg::unit(a), &inner),
            );
        }
        out
    }

    pub fn check_jacobi(&self) -> Result<(), JacobiWitness> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let residual = self.jacobi_residual(i, j, k);
                    if !residual.is_empty() {
                        return Err(JacobiWitness {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_lie(&self) -> bool {
        self.check_jacobi().is_ok()
    }

    /// Span of `[x, y]` over basis vectors `x` of `a` and `y` of `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vals = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let v = self.bracket_sparse(x, y);
                if !v.is_empty() {
                    vals.push(v);
                }
            }
        }
        Subspace::span(self.dim, vals.iter())
    }

    pub fn center(&self) -> Subspace {
        // x is central iff ad(e_j) x = 0 for every j.
        let mut stacked = Vec::with_capacity(self.dim * self.dim);
        for j in 0..self.dim {
            stacked.extend(self.ad(j).rows().iter().cloned());
        }
        let mut m = SparseMatrix::zeros(stacked.len(), self.dim);
        for (r, row) in stacked.into_iter().enumerate() {
            for (c, x) in row {
                m.set(r, c, x);
            }
        }
        m.nullspace()
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        Subspace::span(self.dim, self.brackets.values())
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.ambient() == self.dim && s.contains_space(&self.bracket_span(&self.full(), s))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.ambient() == self.dim && s.contains_space(&self.bracket_span(s, s))
    }

    /// Quotient by an ideal, realised on the non-pivot coordinates of the
    /// ideal's echelon basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Projection), LieError> {
        if ideal.ambient() != self.dim {
            return Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: ideal.ambient(),
            });
        }
        if !self.is_ideal(ideal) {
            return Err(LieError::NotAnIdeal);
        }
        let proj = Projection {
            ideal: ideal.clone(),
            complement: ideal.non_pivots(),
        };
        let labels = proj
            .complement
            .iter()
            .map(|&c| self.labels[c].clone())
            .collect();
        let mut entries = Vec::new();
        for (a, &ca) in proj.complement.iter().enumerate() {
            for (b, &cb) in proj.complement.iter().enumerate().skip(a + 1) {
                entries.push((a, b, proj.apply(&self.bracket_basis(ca, cb))));
            }
        }
        let q = LieAlgebra::new(proj.complement.len(), Some(labels), entries)?;
        Ok((q, proj))
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim;
        let mut brackets = self.brackets.clone();
        for (&(i, j), v) in &other.brackets {
            brackets.insert(
                (i + n, j + n),
                v.iter().map(|(&k, x)| (k + n, x.clone())).collect(),
            );
        }
        let mut labels: Vec<String> = self.labels.iter().chain(&other.labels).cloned().collect();
        let distinct: std::collections::BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            labels = default_labels(n + other.dim);
        }
        LieAlgebra {
            dim: n + other.dim,
            labels,
            brackets,
        }
    }

    /// Same structure constants (labels ignored).
    pub fn same_constants(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.brackets == other.brackets
    }

    /// Structure constants evaluated as rows `(i, j, k, c)`, zero-based.
    pub fn constants(&self) -> Vec<(usize, usize, usize, GaussRat)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), v)| v.iter().map(move |(&k, c)| (i, j, k, c.clone())))
            .collect()
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {}", self.dim)?;
        if self.brackets.is_empty() {
            return write!(f, ", abelian");
        }
        for (&(i, j), v) in &self.brackets {
            write!(f, "\n  [{}, {}] =", self.labels[i], self.labels[j])?;
            for (n, (&k, c)) in v.iter().enumerate() {
                let sep = if n == 0 { " " } else { " + " };
                if c.is_one() {
                    write!(f, "{sep}{}", self.labels[k])?;
                } else {
                    write!(f, "{sep}({c}){}", self.labels[k])?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({self})")
    }
}

/// Linear projection `g -> g/a` onto the non-pivot coordinates of `a`.
#[derive(Clone, Debug)]
pub struct Projection {
    ideal: Subspace,
    complement: Vec<usize>,
}

impl Projection {
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Coordinates of `g` that serve as the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let r = self.ideal.reduce(v);
        self.complement
            .iter()
            .enumerate()
            .filter_map(|(a, c)| r.get(c).map(|x| (a, x.clone())))
            .collect()
    }

    /// The section `g/a -> g` placing quotient coordinates on the complement.
    pub fn section(&self, v: &SparseVec) -> SparseVec {
        v.iter()
            .map(|(&a, x)| (self.complement[a], x.clone()))
            .collect()
    }

    /// Preimage of a subspace of the quotient.
    pub fn pullback(&self, w: &Subspace) -> Subspace {
        let lifted: Vec<SparseVec> = w.basis().iter().map(|v| self.section(v)).collect();
        self.ideal
            .sum(&Subspace::span(self.ideal.ambient(), lifted.iter()))
    }
}

#[cfg(test)]
mod tests;
