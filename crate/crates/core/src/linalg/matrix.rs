use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{add_entry, axpy, dot, scaled, Echelon, LinalgError, SparseVec, Subspace};
use crate::exactnum::GaussRat;

/// Row-major sparse matrix with exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| GaussRat::one()))
    }

    pub fn diagonal(d: impl IntoIterator<Item = GaussRat>) -> Self {
        let d: Vec<GaussRat> = d.into_iter().collect();
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn scalar(n: usize, c: &GaussRat) -> Self {
        Self::diagonal((0..n).map(|_| c.clone()))
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, GaussRat)>,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, x) in entries {
            if i >= rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    got: i + 1,
                });
            }
            if j >= cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: j + 1,
                });
            }
            add_entry(&mut m.data[i], j, &x);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<GaussRat>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| super::from_dense(r)).collect(),
        }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                m.data[i].insert(j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> GaussRat {
        self.data[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: GaussRat) {
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&j).map(|x| (i, x.clone())))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(i, j, _)| i == j)
    }

    pub fn diag(&self) -> Vec<GaussRat> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &GaussRat)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(&j, x)| (i, j, x)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, x) in self.triplets() {
            t.data[j].insert(i, x.clone());
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, x) in self.triplets() {
            t.data[j].insert(i, x.conj());
        }
        t
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| scaled(r, c)).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            let x = dot(r, v);
            if !x.is_zero() {
                out.insert(i, x);
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, r) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (&k, x) in r {
                axpy(acc, x, &rhs.data[k]);
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &SparseMatrix, sign: &GaussRat) -> SparseMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shapes differ"
        );
        let mut out = self.clone();
        for (acc, r) in out.data.iter_mut().zip(&rhs.data) {
            axpy(acc, sign, r);
        }
        out
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &SparseMatrix) -> SparseMatrix {
        &(self * rhs) - &(rhs * self)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().rank()
    }

    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.data {
            e.insert(r);
        }
        e
    }

    pub fn nullspace(&self) -> Subspace {
        let e = self.row_echelon();
        Subspace::from_independent(self.cols, e.kernel_basis(self.cols))
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, self.transpose().data.iter())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.data.iter())
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<SparseMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // Augment each row with the identity block at offset n and reduce.
        let mut e = Echelon::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut aug = r.clone();
            aug.insert(n + i, GaussRat::one());
            e.insert(&aug);
        }
        if e.pivots().iter().take(n).enumerate().any(|(k, &p)| p != k) || e.rank() < n {
            return Err(LinalgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for (k, row) in e.rows().iter().enumerate() {
            inv.data[k] = row.range(n..).map(|(&j, x)| (j - n, x.clone())).collect();
        }
        Ok(inv)
    }

    /// Entries of `self` outside the top-left `k x k` block.
    pub fn outside_block(&self, k: usize) -> impl Iterator<Item = (usize, usize, &GaussRat)> {
        self.triplets().filter(move |&(i, j, _)| i >= k || j >= k)
    }

    /// Top-left `k x k` block.
    pub fn block(&self, k: usize) -> SparseMatrix {
        let mut m = Self::zeros(k, k);
        for (i, j, x) in self.triplets() {
            if i < k && j < k {
                m.data[i].insert(j, x.clone());
            }
        }
        m
    }
}

impl Mul<&SparseMatrix> for &SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.checked_mul(rhs).expect("matrix shapes incompatible")
    }
}

impl Add<&SparseMatrix> for &SparseMatrix {
    type Output = SparseMatrix;
    fn add(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.zip(rhs, &GaussRat::one())
    }
}

impl Sub<&SparseMatrix> for &SparseMatrix {
    type Output = SparseMatrix;
    fn sub(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.zip(rhs, &GaussRat::from_int(-1))
    }
}

impl Neg for &SparseMatrix {
    type Output = SparseMatrix;
    fn neg(self) -> SparseMatrix {
        self.scale(&GaussRat::from_int(-1))
    }
}

/// Serialized as `{"rows", "cols", "entries": [[i, j, "x"], ...]}`.
impl serde::Serialize for SparseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<(usize, usize, &GaussRat)> = self.triplets().collect();
        let mut st = s.serialize_struct("SparseMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (i, j, x) in self.triplets() {
            writeln!(f, "  ({i}, {j}) = {x}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.dim(), 1);
        for v in ns.basis_vectors() {
            assert!(a.apply(&v).is_empty());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, SparseMatrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn complex_inverse() {
        let mut a = SparseMatrix::identity(2);
        a.set(0, 1, GaussRat::i());
        a.set(1, 0, GaussRat::i());
        let inv = a.inverse().unwrap();
        assert_eq!(&inv * &a, SparseMatrix::identity(2));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = SparseMatrix> {
        proptest::collection::vec(-2i64..3, n * n).prop_map(move |xs| {
            SparseMatrix::from_triplets(
                n,
                n,
                xs.into_iter()
                    .enumerate()
                    .map(|(k, x)| (k / n, k % n, GaussRat::from_int(x))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix(5)) {
            prop_assert_eq!(a.rank() + a.nullspace().dim(), 5);
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(a.column_space().dim(), a.rank());
        }

        #[test]
        fn invertible_iff_full_rank(a in arb_matrix(4)) {
            match a.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(a.rank(), 4);
                    prop_assert_eq!(&inv * &a, SparseMatrix::identity(4));
                }
                Err(_) => prop_assert!(a.rank() < 4),
            }
        }
    }
}
