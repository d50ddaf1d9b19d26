use super::*;
use crate::catalog::{self, heisenberg};
use proptest::prelude::*;

fn e(n: usize, k: usize) -> Vec<GaussRat> {
    let mut v = vec![GaussRat::zero(); n];
    v[k] = GaussRat::one();
    v
}

fn algebra(name: &str) -> LieAlgebra {
    catalog::get(name).unwrap().algebra
}

#[test]
fn heisenberg_bracket() {
    let h = heisenberg(1);
    assert_eq!(h.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
    assert!(h.bracket(&e(3, 0), &e(2, 1)).is_err());
}

#[test]
fn n_4_3_bracket() {
    assert_eq!(
        algebra("n_4_3").bracket(&e(4, 0), &e(4, 2)).unwrap(),
        e(4, 3)
    );
}

#[test]
fn jacobi_witness() {
    // [e1,e2] = e1, [e2,e3] = e2, [e1,e3] = 0
    let g = LieAlgebra::from_constants(3, None, &[(1, 2, 1, 1), (2, 3, 2, 1)]);
    let w = g.check_jacobi().unwrap_err();
    assert_eq!(w.triple, (0, 1, 2));
    // [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = [e1,e2] + 0 + [e3,e1] = e1
    assert_eq!(w.residual, crate::linalg::unit(0));
    assert!(LieAlgebra::abelian(4).is_lie());
}

#[test]
fn centre_and_derived() {
    for m in 1..=3 {
        let h = heisenberg(m);
        let z = h.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&crate::linalg::unit(2 * m)));
        assert_eq!(h.derived_subalgebra(), z);
    }
    let a = LieAlgebra::abelian(4);
    assert!(a.center().is_full());
    assert!(a.derived_subalgebra().is_zero());
    assert!(catalog::sl2().center().is_zero());
}

#[test]
fn series_dimensions() {
    assert_eq!(dims(&lower_central_series(&heisenberg(1))), vec![3, 1, 0]);
    assert_eq!(
        dims(&lower_central_series(&algebra("n_5_7"))),
        vec![5, 3, 2, 1, 0]
    );
    assert_eq!(
        dims(&lower_central_series(&LieAlgebra::abelian(4))),
        vec![4, 0]
    );
    assert_eq!(dims(&upper_central_series(&heisenberg(2))), vec![0, 1, 5]);
    assert_eq!(
        dims(&upper_central_series(&LieAlgebra::abelian(3))),
        vec![0, 3]
    );
    assert_eq!(
        dims(&upper_central_series(&algebra("n_4_3"))),
        vec![0, 1, 2, 4]
    );
    assert!(lower_central_series(&LieAlgebra::abelian(0)).is_empty());
    assert!(upper_central_series(&LieAlgebra::abelian(0)).is_empty());
}

#[test]
fn nilpotency_and_solvability() {
    for m in 1..=4 {
        assert_eq!(heisenberg(m).nilpotency_class(), Some(2));
    }
    let sl2 = catalog::sl2();
    assert_eq!(sl2.nilpotency_class(), None);
    assert_eq!(sl2.derived_length(), None);
    assert_eq!(dims(&lower_central_series(&sl2)), vec![3]);
    assert_eq!(algebra("n_5_7").nilpotency_class(), Some(4));
}

#[test]
fn class_from_both_series_agrees() {
    for name in catalog::list() {
        let g = algebra(&name);
        assert_eq!(g.nilpotency_class(), g.nilpotency_class_upper(), "{name}");
    }
}

#[test]
fn series_members_are_ideals() {
    for name in catalog::list() {
        let g = algebra(&name);
        for s in lower_central_series(&g)
            .iter()
            .chain(&upper_central_series(&g))
            .chain(&derived_series(&g))
        {
            assert!(g.is_ideal(s), "{name}");
        }
    }
}

#[test]
fn quotients() {
    let h = heisenberg(1);
    let (q, _) = h.quotient(&h.center()).unwrap();
    assert_eq!(q.dim(), 2);
    assert!(q.is_abelian());

    let (q, _) = h.quotient(&h.full()).unwrap();
    assert_eq!(q.dim(), 0);

    let g = algebra("n_5_4");
    let (q, _) = g.quotient(&g.center()).unwrap();
    assert!(q.same_constants(&LieAlgebra::abelian(4)));

    // span(v1) is not an ideal of h(1)
    let s = crate::linalg::Subspace::span(3, [crate::linalg::unit(0)].iter());
    assert_eq!(h.quotient(&s).unwrap_err(), LieError::NotAnIdeal);
}

#[test]
fn quotient_dimension_count() {
    for name in catalog::list() {
        let g = algebra(&name);
        for s in lower_central_series(&g) {
            let (q, _) = g.quotient(&s).unwrap();
            assert_eq!(q.dim() + s.dim(), g.dim());
            assert!(q.is_lie());
        }
    }
}

#[test]
fn direct_sums() {
    let i = LieAlgebra::abelian(1);
    let s = heisenberg(1).direct_sum(&i).direct_sum(&i);
    assert!(s.same_constants(&algebra("n_5_2")));
    assert!(LieAlgebra::abelian(2)
        .direct_sum(&LieAlgebra::abelian(3))
        .same_constants(&LieAlgebra::abelian(5)));
    assert_eq!(
        invariant_signature(&heisenberg(1).direct_sum(&i)),
        invariant_signature(&algebra("n_4_2"))
    );
    assert!(catalog::sl2().direct_sum(&algebra("n_5_6")).is_lie());
}

#[test]
fn signature_comparisons() {
    assert_eq!(
        invariant_signature(&algebra("n_5_4")),
        invariant_signature(&heisenberg(2))
    );
    let s1 = invariant_signature(&algebra("n_5_1"));
    let s2 = invariant_signature(&algebra("n_5_2"));
    assert_eq!(s1.derived_dim(), 0);
    assert_eq!(s2.derived_dim(), 1);
    assert_ne!(
        invariant_signature(&LieAlgebra::abelian(5)),
        invariant_signature(&algebra("n_5_9"))
    );
}

fn arb_vec(n: usize) -> impl Strategy<Value = Vec<GaussRat>> {
    proptest::collection::vec((-4i64..5, -2i64..3), n).prop_map(|xs| {
        xs.into_iter()
            .map(|(a, b)| GaussRat::complex((a, 1), (b, 1)))
            .collect()
    })
}

proptest! {
    #[test]
    fn bilinearity(x in arb_vec(5), y in arb_vec(5), z in arb_vec(5), a in -3i64..4, b in -3i64..4) {
        let g = algebra("n_5_6");
        let (a, b) = (GaussRat::from_int(a), GaussRat::from_int(b));
        let comb: Vec<GaussRat> = x.iter().zip(&y).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        let lhs = g.bracket(&comb, &z).unwrap();
        let bx = g.bracket(&x, &z).unwrap();
        let by = g.bracket(&y, &z).unwrap();
        let rhs: Vec<GaussRat> = bx.iter().zip(&by).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(g.bracket(&x, &x).unwrap().iter().all(GaussRat::is_zero));
    }
}
