use super::*;
use crate::catalog::{self, heisenberg, sl2};
use crate::linalg::{unit, SparseMatrix};

fn algebra(name: &str) -> LieAlgebra {
    catalog::get(name).unwrap().algebra
}

#[test]
fn adjoint_matrices() {
    assert!(Representation::adjoint(&LieAlgebra::abelian(3))
        .matrices()
        .iter()
        .all(SparseMatrix::is_zero));
    let h = Representation::adjoint(&heisenberg(1));
    assert_eq!(h.matrices()[0].apply(&unit(1)), unit(2));
    let s = Representation::adjoint(&sl2());
    assert!(s.check_bracket_preserved().is_ok());
}

#[test]
fn explicit_rep_is_validated() {
    let g = sl2();
    let bad = vec![SparseMatrix::identity(2); 3];
    assert!(matches!(
        Representation::explicit(&g, bad),
        Err(CohomologyError::NotARepresentation(..))
    ));
    assert!(matches!(
        Representation::explicit(&g, vec![SparseMatrix::identity(2)]),
        Err(CohomologyError::BadMatrices { .. })
    ));
}

#[test]
fn tuple_enumeration() {
    assert_eq!(
        increasing_tuples(4, 2),
        vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3]
        ]
    );
    assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
    assert!(increasing_tuples(2, 3).is_empty());
}

#[test]
fn degree_zero_differential() {
    let g = heisenberg(1);
    let rep = Representation::adjoint(&g);
    let c = Cochain::zero(3, 0, 3).with(&[], unit(1)).unwrap();
    let dc = c.differential(&rep).unwrap();
    // (dc)(x) = ρ(x) v2 = [x, v2]
    assert_eq!(dc.eval_basis(&[0]), unit(2));
    assert!(dc.eval_basis(&[1]).is_empty());
}

#[test]
fn identity_cochain_on_heisenberg() {
    let g = heisenberg(1);
    let rep = Representation::adjoint(&g);
    let mut c = Cochain::zero(3, 1, 3);
    for i in 0..3 {
        c.set(&[i], unit(i)).unwrap();
    }
    assert_eq!(c.differential(&rep).unwrap().eval_basis(&[0, 1]), unit(2));
}

#[test]
fn trivial_rep_on_abelian_has_zero_differential() {
    let g = LieAlgebra::abelian(4);
    let rep = Representation::trivial(&g, 2);
    for k in 0..=4 {
        assert!(differential_matrix(&rep, k).is_zero());
        assert!(coboundary_space(&rep, k).is_zero());
        assert!(cocycle_space(&rep, k).is_full());
    }
}

#[test]
fn source_mismatch() {
    let c = Cochain::zero(3, 1, 2);
    assert_eq!(
        c.differential(&Representation::adjoint(&sl2())),
        Err(CohomologyError::SourceMismatch)
    );
}

#[test]
fn sl2_values() {
    let g = sl2();
    let rep = Representation::adjoint(&g);
    let der = derivation_algebra(&g);
    assert_eq!((der.dim(), der.inner_dim(), der.outer_dim()), (3, 3, 0));
    assert_eq!(cohomology_dim(&rep, 1), 0);
    assert_eq!(cohomology_dim(&rep, 2), 0);
    assert_eq!(cocycle_space(&rep, 2).dim(), 6);
    assert_eq!(coboundary_space(&rep, 2).dim(), 6);
}

#[test]
fn small_values() {
    assert_eq!(
        cohomology_dim(&Representation::trivial(&LieAlgebra::abelian(2), 1), 2),
        1
    );
    assert_eq!(schur_multiplier_dim(&LieAlgebra::abelian(2)), 2);
    assert_eq!(
        coboundary_space(&Representation::trivial(&heisenberg(1), 1), 2).dim(),
        1
    );
    assert_eq!(derivation_algebra(&heisenberg(1)).dim(), 6);
    assert_eq!(derivation_algebra(&LieAlgebra::abelian(3)).dim(), 9);
    assert_eq!(schur_multiplier_dim(&heisenberg(1)), 5);
}

#[test]
fn cocycles_of_degree_one_are_derivations() {
    let g = heisenberg(1);
    let rep = Representation::adjoint(&g);
    let z1 = cocycle_space(&rep, 1);
    let b1 = coboundary_space(&rep, 1);
    let der = derivation_algebra(&g);
    assert_eq!(z1, der.space);
    assert_eq!(b1, der.inner);
}

#[test]
fn derivations_obey_the_law_and_inner_is_an_ideal() {
    for name in ["h(1)", "n_4_3", "n_5_6", "sl2", "a_sh"] {
        let g = algebra(name);
        let der = derivation_algebra(&g);
        assert!(der.basis.iter().all(|d| is_derivation(&g, d)), "{name}");
        assert!(der.algebra.is_lie(), "{name}");
        let ads: Vec<_> = (0..g.dim()).map(|i| g.ad(i)).collect();
        for d in &der.basis {
            for a in &ads {
                assert!(der.inner.contains(&flatten(&d.commutator(a))), "{name}");
            }
        }
    }
}

#[test]
fn cyclic_condition() {
    let h = heisenberg(1);
    // θ(v1, v2) = w with one-dimensional V
    let theta = Cochain::zero(3, 2, 1).with(&[0, 1], unit(0)).unwrap();
    assert!(is_two_cocycle_trivial_coeffs(&h, &theta).unwrap());
    assert!(is_two_cocycle_trivial_coeffs(&LieAlgebra::abelian(3), &theta).unwrap());

    // n_4_3, θ(v1,v2) = w: the triple (v1,v2,v3) gives θ([v1,v2],v3) + θ([v3,v1],v2) + θ([v2,v3],v1)
    // = θ(v3,v3) - θ(v4,v2) + 0 = 0, and (v1,v2,v4) gives θ(v3,v4) + 0 + 0 = 0.
    let g = algebra("n_4_3");
    let theta = Cochain::zero(4, 2, 1).with(&[0, 1], unit(0)).unwrap();
    assert!(is_two_cocycle_trivial_coeffs(&g, &theta).unwrap());
    // θ(v2, v4) = w breaks it on (v1, v2, v3): -θ(v4, v2) = w.
    let theta = Cochain::zero(4, 2, 1).with(&[1, 3], unit(0)).unwrap();
    assert!(!is_two_cocycle_trivial_coeffs(&g, &theta).unwrap());
}

#[test]
fn cyclic_condition_matches_differential_for_trivial_coefficients() {
    let g = algebra("n_5_5");
    let rep = Representation::trivial(&g, 1);
    let space = CochainSpace::new(5, 2, 1);
    for t in 0..space.dim() {
        let c = Cochain::from_vector(&space, &unit(t));
        let closed = c.differential(&rep).unwrap().is_zero();
        assert_eq!(closed, is_two_cocycle_trivial_coeffs(&g, &c).unwrap());
    }
}

#[test]
fn d_squared_on_random_explicit_rep() {
    use rand::{Rng, SeedableRng};
    let g = heisenberg(2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let n = g.dim();
    let t = loop {
        let t = SparseMatrix::from_triplets(
            n,
            n,
            (0..n * n).map(|k| (k / n, k % n, GaussRat::from_int(rng.gen_range(-3..4)))),
        )
        .unwrap();
        if let Ok(inv) = t.inverse() {
            break (t, inv);
        }
    };
    let mats = (0..n).map(|i| &(&t.0 * &g.ad(i)) * &t.1).collect();
    let rep = Representation::explicit(&g, mats).unwrap();
    for k in 0..=n {
        assert!(d_squared_check(&rep, k));
    }
}

#[test]
fn alternating_sum_of_cochain_dims() {
    for n in 1..=7 {
        let s: i64 = (0..=n)
            .map(|k| {
                let d = CochainSpace::new(n, k, 1).dim() as i64;
                if k % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum();
        assert_eq!(s, 0);
    }
}

#[test]
fn betti_table_is_consistent() {
    let rep = Representation::adjoint(&algebra("n_4_3"));
    for row in betti_table(&rep) {
        assert!(row.cocycles >= row.coboundaries);
        assert_eq!(row, betti_row(&rep, row.degree));
    }
}
