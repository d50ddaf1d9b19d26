//! Central extensions `g_θ = g ⊕ V` and recovery of an algebra from its
//! centre and the quotient by it.

use crate::cohomology::{is_two_cocycle_trivial_coeffs, Cochain};
use crate::exactnum::GaussRat;
use crate::liealg::{LieAlgebra, Projection};
use crate::linalg::{axpy, unit, SparseMatrix, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error("θ violates the cocycle condition")]
    CocycleViolation,
    #[error("θ is not a 2-cochain on this algebra")]
    SourceMismatch,
    #[error("the algebra has trivial centre")]
    TrivialCenter,
}

/// A 2-cocycle `θ: g x g -> V` for the trivial action on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCocycle {
    theta: Cochain,
}

impl CentralCocycle {
    pub fn new(g: &LieAlgebra, theta: Cochain) -> Result<Self, ExtendError> {
        if theta.degree() != 2 || theta.algebra_dim() != g.dim() || theta.module_dim() == 0 {
            return Err(ExtendError::SourceMismatch);
        }
        if !is_two_cocycle_trivial_coeffs(g, &theta).map_err(|_| ExtendError::SourceMismatch)? {
            return Err(ExtendError::CocycleViolation);
        }
        Ok(CentralCocycle { theta })
    }

    pub fn target_dim(&self) -> usize {
        self.theta.module_dim()
    }

    pub fn cochain(&self) -> &Cochain {
        &self.theta
    }

    pub fn eval_basis(&self, i: usize, j: usize) -> SparseVec {
        self.theta.eval_basis(&[i, j])
    }
}

/// `[x + u, y + v] = [x, y]_g + θ(x, y)`; `V` occupies the trailing coordinates.
pub fn central_extension(
    g: &LieAlgebra,
    theta: &CentralCocycle,
) -> Result<LieAlgebra, ExtendError> {
    let n = g.dim();
    if theta.cochain().algebra_dim() != n {
        return Err(ExtendError::SourceMismatch);
    }
    if !is_two_cocycle_trivial_coeffs(g, theta.cochain())
        .map_err(|_| ExtendError::SourceMismatch)?
    {
        return Err(ExtendError::CocycleViolation);
    }
    let m = theta.target_dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = g.bracket_basis(i, j);
            for (a, x) in theta.eval_basis(i, j) {
                v.insert(n + a, x);
            }
            entries.push((i, j, v));
        }
    }
    let mut labels = g.labels().to_vec();
    labels.extend((1..=m).map(|a| format!("w{a}")));
    let out = LieAlgebra::new(n + m, Some(labels), entries).expect("indices in range");
    if out.check_jacobi().is_err() {
        return Err(ExtendError::CocycleViolation);
    }
    Ok(out)
}

/// `θ⁺ = {x ∈ g : θ(x, y) = 0 for all y}`.
pub fn cocycle_kernel(g: &LieAlgebra, theta: &CentralCocycle) -> Subspace {
    let n = g.dim();
    let m = theta.target_dim();
    // Row (j, a): x ↦ θ(x, e_j)_a.
    let mut rows = SparseMatrix::zeros(n * m, n);
    for j in 0..n {
        for i in 0..n {
            for (a, x) in theta.eval_basis(i, j) {
                rows.set(j * m + a, i, x);
            }
        }
    }
    rows.nullspace()
}

/// Checks the sequence `0 -> V -> g_θ -> g -> 0` at the level of coordinates.
pub fn short_exact_check(g: &LieAlgebra, ext: &LieAlgebra) -> bool {
    let (n, total) = (g.dim(), ext.dim());
    if total < n {
        return false;
    }
    let m = total - n;
    let image: Vec<SparseVec> = (n..total).map(unit).collect();
    let image = Subspace::span(total, image.iter());
    // The projection keeps the first n coordinates; its kernel is spanned by the trailing units.
    let mut proj = SparseMatrix::zeros(n, total);
    for i in 0..n {
        proj.set(i, i, GaussRat::one());
    }
    let composite_zero = image.basis().iter().all(|v| proj.apply(v).is_empty());
    let kernel = proj.nullspace();
    let projection_is_hom = (0..total).all(|i| {
        (0..total).all(|j| {
            proj.apply(&ext.bracket_basis(i, j))
                == g.bracket_sparse(&proj.apply(&unit(i)), &proj.apply(&unit(j)))
        })
    });
    composite_zero
        && kernel == image
        && kernel.dim() + n == total
        && m == image.dim()
        && projection_is_hom
        && ext.center().contains_space(&image)
}

/// Isomorphism `g_{θ'} -> g_θ`, `(x, v) ↦ (x, v + c'(x))`, for `θ' = θ - c'∘[,]`.
#[derive(Clone, Debug)]
pub struct ShiftIso {
    pub shifted: CentralCocycle,
    pub map: SparseMatrix,
    pub intertwines: bool,
}

pub fn coboundary_shift_iso(
    g: &LieAlgebra,
    theta: &CentralCocycle,
    c: &Cochain,
) -> Result<ShiftIso, ExtendError> {
    let n = g.dim();
    let m = theta.target_dim();
    if c.degree() != 1 || c.algebra_dim() != n || c.module_dim() != m {
        return Err(ExtendError::SourceMismatch);
    }
    let c_of = |x: &SparseVec| {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            axpy(&mut out, a, &c.eval_basis(&[i]));
        }
        out
    };
    let mut shifted = theta.cochain().clone();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = theta.eval_basis(i, j);
            axpy(
                &mut v,
                &GaussRat::from_int(-1),
                &c_of(&g.bracket_basis(i, j)),
            );
            shifted.set(&[i, j], v).expect("valid pair");
        }
    }
    let shifted = CentralCocycle::new(g, shifted)?;
    let mut map = SparseMatrix::identity(n + m);
    for i in 0..n {
        for (a, x) in c.eval_basis(&[i]) {
            map.set(n + a, i, x);
        }
    }
    let src = central_extension(g, &shifted)?;
    let dst = central_extension(g, theta)?;
    let intertwines = (0..n + m).all(|i| {
        (0..n + m).all(|j| {
            map.apply(&src.bracket_basis(i, j))
                == dst.bracket_sparse(&map.column(i), &map.column(j))
        })
    });
    Ok(ShiftIso {
        shifted,
        map,
        intertwines,
    })
}

/// `g` rebuilt as a central extension of `g / Z(g)`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub quotient: LieAlgebra,
    pub projection: Projection,
    pub center: Subspace,
    pub theta: CentralCocycle,
}

impl Induced {
    /// Matrix sending the basis of `central_extension(q, θ)` into `g`.
    pub fn isomorphism(&self) -> SparseMatrix {
        let n = self.center.ambient();
        let cols: Vec<SparseVec> = self
            .projection
            .complement()
            .iter()
            .map(|&c| unit(c))
            .chain(self.center.basis().iter().cloned())
            .collect();
        SparseMatrix::from_columns(n, &cols)
    }

    /// Checks that [`Induced::isomorphism`] is a bijective bracket-preserving map.
    pub fn verify(&self, g: &LieAlgebra) -> bool {
        let Ok(ext) = central_extension(&self.quotient, &self.theta) else {
            return false;
        };
        let phi = self.isomorphism();
        phi.is_square()
            && phi.inverse().is_ok()
            && (0..ext.dim()).all(|i| {
                (0..ext.dim()).all(|j| {
                    phi.apply(&ext.bracket_basis(i, j))
                        == g.bracket_sparse(&phi.column(i), &phi.column(j))
                })
            })
    }
}

pub fn induced_cocycle(g: &LieAlgebra) -> Result<Induced, ExtendError> {
    let center = g.center();
    if center.is_zero() {
        return Err(ExtendError::TrivialCenter);
    }
    let (quotient, projection) = g.quotient(&center).expect("the centre is an ideal");
    let k = quotient.dim();
    let mut theta = Cochain::zero(k, 2, center.dim());
    let comp = projection.complement();
    for a in 0..k {
        for b in a + 1..k {
            let w = g.bracket_basis(comp[a], comp[b]);
            let mut z = w.clone();
            axpy(
                &mut z,
                &GaussRat::from_int(-1),
                &projection.section(&projection.apply(&w)),
            );
            let coords = center.coords(&z).expect("remainder lies in the centre");
            let v: SparseVec = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
            theta.set(&[a, b], v).expect("valid pair");
        }
    }
    let theta = CentralCocycle::new(&quotient, theta)?;
    Ok(Induced {
        quotient,
        projection,
        center,
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, heisenberg};
    use crate::liealg::invariant_signature;

    fn algebra(name: &str) -> LieAlgebra {
        catalog::get(name).unwrap().algebra
    }

    fn w() -> SparseVec {
        unit(0)
    }

    #[test]
    fn abelian_plane_extends_to_heisenberg() {
        let g = LieAlgebra::abelian(2);
        let theta =
            CentralCocycle::new(&g, Cochain::zero(2, 2, 1).with(&[0, 1], w()).unwrap()).unwrap();
        let ext = central_extension(&g, &theta).unwrap();
        assert_eq!(
            invariant_signature(&ext),
            invariant_signature(&heisenberg(1))
        );
        assert!(short_exact_check(&g, &ext));
        assert!(cocycle_kernel(&g, &theta).is_zero());
    }

    #[test]
    fn zero_cocycle_gives_direct_sum() {
        let g = heisenberg(1);
        let theta = CentralCocycle::new(&g, Cochain::zero(3, 2, 2)).unwrap();
        let ext = central_extension(&g, &theta).unwrap();
        assert!(ext.same_constants(&g.direct_sum(&LieAlgebra::abelian(2))));
        assert!(cocycle_kernel(&g, &theta).is_full());
    }

    #[test]
    fn two_pairs_give_h2() {
        let g = LieAlgebra::abelian(4);
        let c = Cochain::zero(4, 2, 1)
            .with(&[0, 1], w())
            .unwrap()
            .with(&[2, 3], w())
            .unwrap();
        let ext = central_extension(&g, &CentralCocycle::new(&g, c).unwrap()).unwrap();
        assert_eq!(
            invariant_signature(&ext),
            invariant_signature(&algebra("n_5_4"))
        );
    }

    #[test]
    fn kernel_of_single_pair() {
        let g = LieAlgebra::abelian(3);
        let theta =
            CentralCocycle::new(&g, Cochain::zero(3, 2, 1).with(&[0, 1], w()).unwrap()).unwrap();
        let k = cocycle_kernel(&g, &theta);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&unit(2)));
    }

    #[test]
    fn cocycle_violation_is_rejected() {
        let g = algebra("n_4_3");
        let bad = Cochain::zero(4, 2, 1).with(&[1, 3], w()).unwrap();
        assert_eq!(
            CentralCocycle::new(&g, bad).unwrap_err(),
            ExtendError::CocycleViolation
        );
    }

    #[test]
    fn shift_on_heisenberg() {
        let g = heisenberg(1);
        let theta =
            CentralCocycle::new(&g, Cochain::zero(3, 2, 1).with(&[0, 1], w()).unwrap()).unwrap();
        let c = Cochain::zero(3, 1, 1).with(&[2], w()).unwrap();
        let iso = coboundary_shift_iso(&g, &theta, &c).unwrap();
        assert!(iso.intertwines);
        // θ'(v1, v2) = θ(v1, v2) - c'(v) = 0
        assert!(iso.shifted.eval_basis(0, 1).is_empty());

        let zero = coboundary_shift_iso(&g, &theta, &Cochain::zero(3, 1, 1)).unwrap();
        assert_eq!(zero.map, SparseMatrix::identity(4));
        assert_eq!(zero.shifted, theta);
    }

    #[test]
    fn shift_on_abelian_keeps_theta() {
        let g = LieAlgebra::abelian(3);
        let theta =
            CentralCocycle::new(&g, Cochain::zero(3, 2, 1).with(&[0, 2], w()).unwrap()).unwrap();
        let c = Cochain::zero(3, 1, 1)
            .with(&[1], crate::linalg::scaled(&w(), &GaussRat::from_int(-1)))
            .unwrap();
        let iso = coboundary_shift_iso(&g, &theta, &c).unwrap();
        assert!(iso.intertwines);
        assert_eq!(iso.shifted, theta);
    }

    #[test]
    fn induced_from_heisenberg() {
        let g = heisenberg(1);
        let ind = induced_cocycle(&g).unwrap();
        assert!(ind.quotient.same_constants(&LieAlgebra::abelian(2)));
        assert_eq!(ind.theta.eval_basis(0, 1), w());
        assert!(ind.verify(&g));
    }

    #[test]
    fn induced_from_abelian() {
        let g = LieAlgebra::abelian(3);
        let ind = induced_cocycle(&g).unwrap();
        assert_eq!(ind.quotient.dim(), 0);
        let ext = central_extension(&ind.quotient, &ind.theta).unwrap();
        assert!(ext.is_abelian());
        assert_eq!(ext.dim(), 3);
    }

    #[test]
    fn induced_from_n_5_4() {
        let g = algebra("n_5_4");
        let ind = induced_cocycle(&g).unwrap();
        assert!(ind.quotient.same_constants(&LieAlgebra::abelian(4)));
        assert_eq!(ind.theta.cochain().values().count(), 2);
        let ext = central_extension(&ind.quotient, &ind.theta).unwrap();
        assert_eq!(invariant_signature(&ext), invariant_signature(&g));
    }

    #[test]
    fn trivial_center_is_an_error() {
        assert_eq!(
            induced_cocycle(&catalog::sl2()).unwrap_err(),
            ExtendError::TrivialCenter
        );
    }

    #[test]
    fn round_trip_isomorphism_for_catalog() {
        for name in catalog::list() {
            let g = algebra(&name);
            if g.center().is_zero() {
                continue;
            }
            let ind = induced_cocycle(&g).unwrap();
            assert!(ind.verify(&g), "{name}");
        }
    }
}
