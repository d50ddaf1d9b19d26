//! Polynomial deformations `μ_t = μ + t φ_1 + … + t^k φ_k` of a bracket.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{cocycle_space, derivation_algebra, Cochain, CochainSpace, Representation};
use crate::exactnum::{GaussRat, LaurentPoly, Param};
use crate::liealg::LieAlgebra;
use crate::linalg::{axpy, scaled, unit, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("perturbation {0} is not a degree-2 cochain with values in the algebra")]
    SourceMismatch(usize),
    #[error("a deformation needs at least one perturbation")]
    NoPerturbations,
    #[error("bracket at the given parameter violates Jacobi on ({}, {}, {})", .triple.0 + 1, .triple.1 + 1, .triple.2 + 1)]
    NotLieAtParameter { triple: (usize, usize, usize) },
}

/// First nonvanishing graded Jacobi component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedWitness {
    pub triple: (usize, usize, usize),
    pub degree: i64,
    pub residual: SparseVec,
}

#[derive(Clone, Debug)]
pub struct DeformedBracket {
    base: LieAlgebra,
    perturbations: Vec<Cochain>,
    /// `[base, φ_1, …, φ_k]` as bilinear products.
    graded: Vec<LieAlgebra>,
}

/// Reads an alternating `g x g -> g` cochain as a (possibly non-Lie) bracket.
pub fn cochain_as_bracket(g: &LieAlgebra, phi: &Cochain) -> LieAlgebra {
    let entries = phi.values().map(|(t, v)| (t[0], t[1], v.clone()));
    LieAlgebra::new(g.dim(), Some(g.labels().to_vec()), entries)
        .expect("cochain indices are in range")
}

/// The structure constants of `g` as a 2-cochain in `C^2(g, g)`.
pub fn bracket_as_cochain(g: &LieAlgebra) -> Cochain {
    let mut c = Cochain::zero(g.dim(), 2, g.dim());
    for ((i, j), v) in g.brackets() {
        c.set(&[i, j], v.clone()).expect("valid pair");
    }
    c
}

impl DeformedBracket {
    pub fn new(base: &LieAlgebra, perturbations: Vec<Cochain>) -> Result<Self, DeformError> {
        if perturbations.is_empty() {
            return Err(DeformError::NoPerturbations);
        }
        for (i, phi) in perturbations.iter().enumerate() {
            if phi.degree() != 2
                || phi.algebra_dim() != base.dim()
                || phi.module_dim() != base.dim()
            {
                return Err(DeformError::SourceMismatch(i + 1));
            }
        }
        let mut graded = vec![base.clone()];
        graded.extend(perturbations.iter().map(|p| cochain_as_bracket(base, p)));
        Ok(DeformedBracket {
            base: base.clone(),
            perturbations,
            graded,
        })
    }

    pub fn linear(base: &LieAlgebra, phi: Cochain) -> Result<Self, DeformError> {
        Self::new(base, vec![phi])
    }

    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn perturbations(&self) -> &[Cochain] {
        &self.perturbations
    }

    pub fn order(&self) -> usize {
        self.perturbations.len()
    }

    /// `Σ_{a+b=d} μ_a(x, μ_b(y, z)) + cyclic` for one basis triple.
    fn graded_residual(&self, (i, j, k): (usize, usize, usize), a: usize, b: usize) -> SparseVec {
        let (outer, inner) = (&self.graded[a], &self.graded[b]);
        let mut out = SparseVec::new();
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            axpy(
                &mut out,
                &GaussRat::one(),
                &outer.bracket_sparse(&unit(x), &inner.bracket_basis(y, z)),
            );
        }
        out
    }

    /// The Jacobi sum of `μ_t` on every basis triple, collected by powers of `t`.
    pub fn jacobi_polynomial(&self) -> JacobiPolynomial {
        let n = self.base.dim();
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut comps: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                    for a in 0..self.graded.len() {
                        for b in 0..self.graded.len() {
                            for (c, x) in self.graded_residual((i, j, k), a, b) {
                                comps
                                    .entry(c)
                                    .or_insert_with(|| LaurentPoly::zero(Param::T))
                                    .add_term((a + b) as i64, &x);
                            }
                        }
                    }
                    comps.retain(|_, p| !p.is_zero());
                    if !comps.is_empty() {
                        entries.insert((i, j, k), comps);
                    }
                }
            }
        }
        JacobiPolynomial { dim: n, entries }
    }

    pub fn is_lie(&self) -> Result<(), GradedWitness> {
        self.jacobi_polynomial().first_witness().map_or(Ok(()), Err)
    }

    /// Structure constants `μ + Σ t0^i φ_i`, without any Jacobi check.
    pub fn evaluate_unchecked(&self, t0: &GaussRat) -> LieAlgebra {
        let mut entries = Vec::new();
        let mut power = GaussRat::one();
        for g in &self.graded {
            for ((i, j), v) in g.brackets() {
                entries.push((i, j, scaled(v, &power)));
            }
            power = &power * t0;
        }
        LieAlgebra::new(self.base.dim(), Some(self.base.labels().to_vec()), entries)
            .expect("indices in range")
    }

    /// Evaluates at `t0`. Unless `allow_non_lie` is set, the result must be a
    /// Lie algebra: either the graded identity holds, or Jacobi holds directly
    /// at this parameter.
    pub fn evaluate_at(
        &self,
        t0: &GaussRat,
        allow_non_lie: bool,
    ) -> Result<Evaluated, DeformError> {
        let algebra = self.evaluate_unchecked(t0);
        let verified = self.is_lie().is_ok() || algebra.is_lie();
        if !verified && !allow_non_lie {
            let w = algebra.check_jacobi().expect_err("not verified");
            return Err(DeformError::NotLieAtParameter { triple: w.triple });
        }
        Ok(Evaluated { algebra, verified })
    }
}

#[derive(Clone, Debug)]
pub struct Evaluated {
    pub algebra: LieAlgebra,
    /// False when the product was accepted through the override.
    pub verified: bool,
}

/// Jacobi sums as polynomials in `t`: triple -> component -> polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPolynomial {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), BTreeMap<usize, LaurentPoly>>,
}

impl JacobiPolynomial {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries only.
    pub fn entries(&self) -> &BTreeMap<(usize, usize, usize), BTreeMap<usize, LaurentPoly>> {
        &self.entries
    }

    pub fn get(&self, triple: (usize, usize, usize)) -> Vec<LaurentPoly> {
        let row = self.entries.get(&triple);
        (0..self.dim)
            .map(|c| {
                row.and_then(|r| r.get(&c))
                    .cloned()
                    .unwrap_or_else(|| LaurentPoly::zero(Param::T))
            })
            .collect()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries
            .values()
            .flat_map(|r| r.values())
            .filter_map(LaurentPoly::max_degree)
            .max()
    }

    /// Coefficient of `t^d` per triple.
    pub fn component(&self, d: i64) -> BTreeMap<(usize, usize, usize), SparseVec> {
        let mut out = BTreeMap::new();
        for (&t, row) in &self.entries {
            let v: SparseVec = row
                .iter()
                .filter_map(|(&c, p)| {
                    let x = p.coeff(d);
                    (!x.is_zero()).then_some((c, x))
                })
                .collect();
            if !v.is_empty() {
                out.insert(t, v);
            }
        }
        out
    }

    pub fn eval(&self, t0: &GaussRat) -> BTreeMap<(usize, usize, usize), SparseVec> {
        let mut out = BTreeMap::new();
        for (&t, row) in &self.entries {
            let v: SparseVec = row
                .iter()
                .filter_map(|(&c, p)| {
                    let x = p.eval(t0).expect("no negative powers of t");
                    (!x.is_zero()).then_some((c, x))
                })
                .collect();
            if !v.is_empty() {
                out.insert(t, v);
            }
        }
        out
    }

    /// Lexicographically first triple, lowest degree.
    pub fn first_witness(&self) -> Option<GradedWitness> {
        let (&triple, row) = self.entries.iter().next()?;
        let degree = row
            .values()
            .filter_map(LaurentPoly::min_degree)
            .min()
            .expect("nonzero entry");
        let residual = row
            .iter()
            .filter_map(|(&c, p)| {
                let x = p.coeff(degree);
                (!x.is_zero()).then_some((c, x))
            })
            .collect();
        Some(GradedWitness {
            triple,
            degree,
            residual,
        })
    }
}

/// Direct Jacobi residuals of an algebra on every basis triple.
pub fn direct_residuals(g: &LieAlgebra) -> BTreeMap<(usize, usize, usize), SparseVec> {
    let n = g.dim();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let r = g.jacobi_residual(i, j, k);
                if !r.is_empty() {
                    out.insert((i, j, k), r);
                }
            }
        }
    }
    out
}

/// `Z²(g, g; ad)` with a full Jacobi filter on its basis cocycles.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub cocycles: Subspace,
    pub basis: Vec<Cochain>,
    /// Whether `μ + t φ` is a Lie bracket for all `t`, per basis cocycle.
    pub survives: Vec<bool>,
}

impl Candidates {
    pub fn survivor_count(&self) -> usize {
        self.survives.iter().filter(|&&s| s).count()
    }
}

pub fn linear_deformation_candidates(g: &LieAlgebra) -> Candidates {
    let rep = Representation::adjoint(g);
    let cocycles = cocycle_space(&rep, 2);
    let space = CochainSpace::new(g.dim(), 2, g.dim());
    let basis: Vec<Cochain> = cocycles
        .basis()
        .iter()
        .map(|v| Cochain::from_vector(&space, v))
        .collect();
    let survives = basis
        .iter()
        .map(|phi| {
            DeformedBracket::linear(g, phi.clone())
                .expect("matching source")
                .is_lie()
                .is_ok()
        })
        .collect();
    Candidates {
        cocycles,
        basis,
        survives,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub dim: usize,
    pub der_dim: usize,
    /// `n² - dim Der`.
    pub orbit_tangent_dim: usize,
    pub b2_dim: usize,
    pub h2_dim: usize,
    /// Trivial `H²(g, g)`.
    pub nr_rigid: bool,
    /// Orbit tangent dimension equals `dim B²(g, g)`.
    pub tangent_equals_b2: bool,
}

pub fn rigidity_report(g: &LieAlgebra) -> RigidityReport {
    let n = g.dim();
    let rep = Representation::adjoint(g);
    let der_dim = derivation_algebra(g).dim();
    let row = crate::cohomology::betti_row(&rep, 2);
    let orbit_tangent_dim = n * n - der_dim;
    RigidityReport {
        dim: n,
        der_dim,
        orbit_tangent_dim,
        b2_dim: row.coboundaries,
        h2_dim: row.cohomology,
        nr_rigid: row.cohomology == 0,
        tangent_equals_b2: orbit_tangent_dim == row.coboundaries,
    }
}

/// Whether repeated application of derivations `Der(g)·g ⊇ Der(g)²·g ⊇ …`
/// reaches zero.
pub fn characteristically_nilpotent(g: &LieAlgebra) -> bool {
    let der = derivation_algebra(g);
    let mut cur = g.full();
    while !cur.is_zero() {
        let images: Vec<SparseVec> = der
            .basis
            .iter()
            .flat_map(|d| cur.basis().iter().map(move |v| d.apply(v)))
            .collect();
        let next = Subspace::span(g.dim(), images.iter());
        if next.dim() == cur.dim() {
            return false;
        }
        cur = next;
    }
    true
}

/// Whether `Der(g)` is nilpotent as a Lie algebra.
pub fn derivation_algebra_is_nilpotent(g: &LieAlgebra) -> bool {
    derivation_algebra(g).algebra.is_nilpotent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, heisenberg, sl2};
    use crate::cohomology::is_two_cocycle_trivial_coeffs;
    use proptest::prelude::*;

    fn algebra(name: &str) -> LieAlgebra {
        catalog::get(name).unwrap().algebra
    }

    /// `φ(e1,e2) = e1, φ(e2,e3) = e2` on a three-dimensional space.
    fn bad_phi() -> Cochain {
        Cochain::zero(3, 2, 3)
            .with(&[0, 1], unit(0))
            .unwrap()
            .with(&[1, 2], unit(1))
            .unwrap()
    }

    #[test]
    fn zero_base_with_heisenberg_bracket() {
        let d =
            DeformedBracket::linear(&LieAlgebra::abelian(3), bracket_as_cochain(&heisenberg(1)))
                .unwrap();
        assert!(d.is_lie().is_ok());
        let h = d.evaluate_at(&GaussRat::one(), false).unwrap();
        assert!(h.verified);
        assert!(h.algebra.same_constants(&heisenberg(1)));
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let g = algebra("n_5_2");
        let d = DeformedBracket::linear(&g, Cochain::zero(5, 2, 5)).unwrap();
        assert!(d.jacobi_polynomial().is_zero());
        assert!(d
            .evaluate_at(&GaussRat::from_int(5), false)
            .unwrap()
            .algebra
            .same_constants(&g));
    }

    #[test]
    fn construction_checks_source() {
        let g = algebra("n_4_1");
        assert!(DeformedBracket::linear(
            &g,
            Cochain::zero(4, 2, 4).with(&[0, 1], unit(2)).unwrap()
        )
        .is_ok());
        assert_eq!(
            DeformedBracket::linear(&g, Cochain::zero(3, 2, 3)).unwrap_err(),
            DeformError::SourceMismatch(1)
        );
        assert_eq!(
            DeformedBracket::new(&g, vec![]).unwrap_err(),
            DeformError::NoPerturbations
        );
    }

    #[test]
    fn self_jacobi_failure_shows_at_degree_two() {
        let d = DeformedBracket::linear(&LieAlgebra::abelian(3), bad_phi()).unwrap();
        let w = d.is_lie().unwrap_err();
        assert_eq!((w.triple, w.degree), ((0, 1, 2), 2));
        assert_eq!(w.residual, unit(0));
        assert!(matches!(
            d.evaluate_at(&GaussRat::one(), false),
            Err(DeformError::NotLieAtParameter { .. })
        ));
        let forced = d.evaluate_at(&GaussRat::one(), true).unwrap();
        assert!(!forced.verified);
        // cyclic condition with trivial coefficients is vacuous over the zero bracket
        assert!(is_two_cocycle_trivial_coeffs(&LieAlgebra::abelian(3), &bad_phi()).unwrap());
    }

    #[test]
    fn evaluation_at_zero_returns_base() {
        let d = DeformedBracket::linear(&LieAlgebra::abelian(3), bad_phi()).unwrap();
        let e = d.evaluate_at(&GaussRat::zero(), false).unwrap();
        assert!(e.algebra.same_constants(&LieAlgebra::abelian(3)));
    }

    #[test]
    fn degree_zero_is_base_jacobi() {
        let g = algebra("n_5_6");
        let phi = Cochain::zero(5, 2, 5).with(&[0, 4], unit(1)).unwrap();
        let d = DeformedBracket::linear(&g, phi).unwrap();
        assert!(d.jacobi_polynomial().component(0).is_empty());
    }

    #[test]
    fn cocycle_kills_linear_term() {
        let g = algebra("n_5_2");
        let c = linear_deformation_candidates(&g);
        assert_eq!(c.cocycles.dim(), invariant_z2(&g));
        for phi in &c.basis {
            let jp = DeformedBracket::linear(&g, phi.clone())
                .unwrap()
                .jacobi_polynomial();
            assert!(jp.component(1).is_empty());
            // t² is exactly the self-Jacobi sum of φ
            let self_j = direct_residuals(&cochain_as_bracket(&g, phi));
            assert_eq!(jp.component(2), self_j);
        }
    }

    fn invariant_z2(g: &LieAlgebra) -> usize {
        crate::cohomology::betti_row(&Representation::adjoint(g), 2).cocycles
    }

    #[test]
    fn sl2_candidates_and_rigidity() {
        let g = sl2();
        let c = linear_deformation_candidates(&g);
        // every cocycle is a coboundary
        assert_eq!(c.cocycles.dim(), 6);
        let r = rigidity_report(&g);
        assert_eq!((r.orbit_tangent_dim, r.b2_dim, r.h2_dim), (6, 6, 0));
        assert!(r.nr_rigid && r.tangent_equals_b2);
    }

    #[test]
    fn rigidity_numbers() {
        let r = rigidity_report(&LieAlgebra::abelian(3));
        assert_eq!((r.orbit_tangent_dim, r.b2_dim, r.h2_dim), (0, 0, 9));
        assert!(r.tangent_equals_b2 && !r.nr_rigid);
        assert_eq!(rigidity_report(&heisenberg(1)).orbit_tangent_dim, 3);
    }

    #[test]
    fn tangent_always_matches_coboundaries() {
        for name in catalog::list() {
            assert!(rigidity_report(&algebra(&name)).tangent_equals_b2, "{name}");
        }
    }

    #[test]
    fn characteristic_nilpotency() {
        for n in 1..=4 {
            assert!(!characteristically_nilpotent(&LieAlgebra::abelian(n)));
        }
        assert!(!characteristically_nilpotent(&heisenberg(1)));
        assert!(!characteristically_nilpotent(&sl2()));
        assert!(!derivation_algebra_is_nilpotent(&heisenberg(1)));
        assert!(!derivation_algebra_is_nilpotent(&sl2()));
        for name in catalog::NILPOTENT_NAMES {
            assert!(!characteristically_nilpotent(&algebra(name)), "{name}");
        }
    }

    #[test]
    fn degree_bound() {
        let phi2 = Cochain::zero(3, 2, 3).with(&[0, 2], unit(1)).unwrap();
        let d = DeformedBracket::new(&heisenberg(1), vec![bad_phi(), phi2]).unwrap();
        assert!(d.jacobi_polynomial().max_degree().unwrap() <= 4);
    }

    #[test]
    fn preservation_when_all_graded_parts_vanish() {
        // φ1 = φ2 = the h(1) bracket over a zero base: μ_t = (t + t²) [,]_h
        let phi = bracket_as_cochain(&heisenberg(1));
        let d = DeformedBracket::new(&LieAlgebra::abelian(3), vec![phi.clone(), phi]).unwrap();
        assert!(d.is_lie().is_ok());
    }

    fn arb_phi(n: usize) -> impl Strategy<Value = Cochain> {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(-2i64..3, pairs * n).prop_map(move |xs| {
            let space = CochainSpace::new(n, 2, n);
            let v: SparseVec = xs
                .into_iter()
                .enumerate()
                .filter(|(_, x)| *x != 0)
                .map(|(i, x)| (i, GaussRat::from_int(x)))
                .collect();
            Cochain::from_vector(&space, &v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn graded_consistency(phi in arb_phi(4), phi2 in arb_phi(4), a in -5i64..6, b in 1i64..4) {
            let g = algebra("n_4_3");
            let d = DeformedBracket::new(&g, vec![phi, phi2]).unwrap();
            let t0 = GaussRat::ratio(a, b);
            let direct = direct_residuals(&d.evaluate_unchecked(&t0));
            prop_assert_eq!(d.jacobi_polynomial().eval(&t0), direct);
        }
    }
}
