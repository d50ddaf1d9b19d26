use super::{to_dense, unit, Echelon, SparseMatrix, SparseVec};
use crate::exactnum::GaussRat;

/// A linear subspace of `Q(i)^n`, held as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Echelon,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.rows() == other.basis.rows()
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Echelon::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_independent(ambient, (0..ambient).map(unit))
    }

    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut basis = Echelon::new();
        for v in vectors {
            debug_assert!(v.keys().all(|&i| i < ambient));
            basis.insert(v);
        }
        Subspace { ambient, basis }
    }

    pub fn from_independent(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let vs: Vec<SparseVec> = vectors.into_iter().collect();
        Self::span(ambient, vs.iter())
    }

    pub fn span_dense(ambient: usize, vectors: &[Vec<GaussRat>]) -> Self {
        Self::from_independent(ambient, vectors.iter().map(|v| super::from_dense(v)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        self.basis.pivots()
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&c| !self.basis.is_pivot(c))
            .collect()
    }

    /// RREF basis rows.
    pub fn basis(&self) -> &[SparseVec] {
        self.basis.rows()
    }

    pub fn basis_vectors(&self) -> Vec<SparseVec> {
        self.basis.rows().to_vec()
    }

    pub fn basis_dense(&self) -> Vec<Vec<GaussRat>> {
        self.basis
            .rows()
            .iter()
            .map(|r| to_dense(r, self.ambient))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.basis.contains(v)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` relative to [`Subspace::basis`].
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<GaussRat>> {
        self.basis.coords(v)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.basis.reduce(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut basis = self.basis.clone();
        for v in other.basis() {
            basis.insert(v);
        }
        Subspace {
            ambient: self.ambient,
            basis,
        }
    }

    /// Vectors orthogonal (under the bilinear dot product) to every basis row.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_independent(self.ambient, self.basis.kernel_basis(self.ambient))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // (U ∩ W)^⊥ = U^⊥ + W^⊥ for the nondegenerate bilinear pairing.
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Matrix whose rows are the RREF basis.
    pub fn as_matrix(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim(), self.ambient);
        for (i, r) in self.basis().iter().enumerate() {
            for (&j, x) in r {
                m.set(i, j, x.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_dense;

    fn v(xs: &[i64]) -> SparseVec {
        from_dense(
            &xs.iter()
                .map(|&x| GaussRat::from_int(x))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rref_pivots_increase() {
        let s = Subspace::span(
            4,
            [v(&[0, 0, 1, 1]), v(&[1, 2, 0, 0]), v(&[1, 2, 1, 1])].iter(),
        );
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 2]);
        assert_eq!(s.non_pivots(), vec![1, 3]);
    }

    #[test]
    fn coordinates_reconstruct() {
        let s = Subspace::span(3, [v(&[1, 1, 0]), v(&[0, 1, 1])].iter());
        let w = v(&[2, 5, 3]);
        let c = s.coords(&w).unwrap();
        let mut back = SparseVec::new();
        for (ci, row) in c.iter().zip(s.basis()) {
            crate::linalg::axpy(&mut back, ci, row);
        }
        assert_eq!(back, w);
        assert!(s.coords(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])].iter());
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])].iter());
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 1, 0])));
    }
}
