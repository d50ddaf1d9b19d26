use super::{cocycle_space, Representation};
use crate::exactnum::GaussRat;
use crate::liealg::LieAlgebra;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};

/// `Der(g)` as a matrix Lie algebra, with `Inn(g)` inside it.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    /// Structure constants relative to [`DerivationAlgebra::basis`].
    pub algebra: LieAlgebra,
    /// Basis derivations as `n x n` matrices.
    pub basis: Vec<SparseMatrix>,
    /// `Der(g)` in flattened coordinates (`D[a][j]` at `j * n + a`).
    pub space: Subspace,
    /// `Inn(g) = span{ad x}` in the same coordinates.
    pub inner: Subspace,
}

impl DerivationAlgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn inner_dim(&self) -> usize {
        self.inner.dim()
    }

    /// `dim Der - dim Inn`.
    pub fn outer_dim(&self) -> usize {
        self.dim() - self.inner_dim()
    }
}

pub fn flatten(m: &SparseMatrix) -> SparseVec {
    let n = m.nrows();
    m.triplets()
        .map(|(a, j, x)| (j * n + a, x.clone()))
        .collect()
}

pub fn unflatten(v: &SparseVec, n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(n, n, v.iter().map(|(&c, x)| (c % n, c / n, x.clone())))
        .expect("in range")
}

/// Solves `D[x,y] = [Dx,y] + [x,Dy]` as the 1-cocycles of the adjoint module.
pub fn derivation_algebra(g: &LieAlgebra) -> DerivationAlgebra {
    let n = g.dim();
    let space = cocycle_space(&Representation::adjoint(g), 1);
    let basis: Vec<SparseMatrix> = space.basis().iter().map(|v| unflatten(v, n)).collect();
    let ads: Vec<SparseVec> = (0..n).map(|i| flatten(&g.ad(i))).collect();
    let inner = Subspace::span(n * n, ads.iter());
    let mut entries = Vec::new();
    for p in 0..basis.len() {
        for q in p + 1..basis.len() {
            let c = flatten(&basis[p].commutator(&basis[q]));
            let coords = space
                .coords(&c)
                .expect("Der(g) is closed under commutators");
            let out: SparseVec = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect::<SparseVec>();
            entries.push((p, q, out));
        }
    }
    let labels = (1..=basis.len()).map(|i| format!("D{i}")).collect();
    let algebra =
        LieAlgebra::new(basis.len(), Some(labels), entries).expect("valid derivation constants");
    DerivationAlgebra {
        algebra,
        basis,
        space,
        inner,
    }
}

/// Whether `D` satisfies the derivation law on every basis pair.
pub fn is_derivation(g: &LieAlgebra, d: &SparseMatrix) -> bool {
    let n = g.dim();
    let one = GaussRat::one();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = d.apply(&g.bracket_basis(i, j));
            let mut rhs = g.bracket_sparse(&d.column(i), &crate::linalg::unit(j));
            crate::linalg::axpy(
                &mut rhs,
                &one,
                &g.bracket_sparse(&crate::linalg::unit(i), &d.column(j)),
            );
            lhs == rhs
        })
    })
}
