//! Built-in algebras: small nilpotent classification, Heisenberg family,
//! `sl2` and the shifted-oscillator algebra `a_sh`.

use serde::Serialize;

use crate::liealg::{invariant_signature, InvariantSignature, LieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown algebra '{0}'")]
    UnknownName(String),
}

/// Documented invariants; `None` fields are not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub nilpotency_class: Option<Option<usize>>,
    pub center: Option<usize>,
    pub derived: Option<usize>,
    pub schur: Option<usize>,
    pub abelian: Option<bool>,
}

impl Expected {
    /// Names of fields that disagree with `sig`.
    pub fn mismatches(&self, sig: &InvariantSignature) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self
            .nilpotency_class
            .is_some_and(|c| c != sig.nilpotency_class)
        {
            out.push("nilpotency_class");
        }
        if self.center.is_some_and(|c| c != sig.center) {
            out.push("center");
        }
        if self.derived.is_some_and(|d| d != sig.derived_dim()) {
            out.push("derived");
        }
        if self.schur.is_some_and(|h| h != sig.h2) {
            out.push("schur");
        }
        if self.abelian.is_some_and(|a| a != sig.abelian) {
            out.push("abelian");
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub expected: Expected,
    pub notes: &'static str,
}

pub fn heisenberg(m: usize) -> LieAlgebra {
    let n = 2 * m + 1;
    let consts: Vec<_> = (1..=m).map(|i| (2 * i - 1, 2 * i, n, 1)).collect();
    LieAlgebra::from_constants(n, None, &consts)
}

pub fn sl2() -> LieAlgebra {
    let labels = ["e", "f", "h"].map(String::from).to_vec();
    // [e,f] = h, [h,e] = 2e, [h,f] = -2f
    LieAlgebra::from_constants(
        3,
        Some(labels),
        &[(1, 2, 3, 1), (3, 1, 1, 2), (3, 2, 2, -2)],
    )
}

pub fn a_sh() -> LieAlgebra {
    let labels = ["v1", "v2", "v3", "v4", "v"].map(String::from).to_vec();
    // v1 = A, v2 = B, v3 = B†, v4 = A†, v = identity
    LieAlgebra::from_constants(
        5,
        Some(labels),
        &[(1, 2, 5, 1), (3, 4, 5, 1), (1, 4, 5, 1), (3, 2, 5, 1)],
    )
}

fn nilpotent(name: &str) -> Option<LieAlgebra> {
    let i = LieAlgebra::abelian(1);
    Some(match name {
        "n_3_1" => LieAlgebra::abelian(3),
        "n_3_2" => heisenberg(1),
        "n_4_1" => nilpotent("n_3_1")?.direct_sum(&i),
        "n_4_2" => nilpotent("n_3_2")?.direct_sum(&i),
        "n_4_3" => LieAlgebra::from_constants(4, None, &[(1, 2, 3, 1), (1, 3, 4, 1)]),
        "n_5_1" => nilpotent("n_4_1")?.direct_sum(&i),
        "n_5_2" => nilpotent("n_4_2")?.direct_sum(&i),
        "n_5_3" => nilpotent("n_4_3")?.direct_sum(&i),
        "n_5_4" => LieAlgebra::from_constants(5, None, &[(1, 2, 5, 1), (3, 4, 5, 1)]),
        "n_5_5" => LieAlgebra::from_constants(5, None, &[(1, 2, 3, 1), (1, 3, 5, 1), (2, 4, 5, 1)]),
        "n_5_6" => LieAlgebra::from_constants(
            5,
            None,
            &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (2, 3, 5, 1)],
        ),
        "n_5_7" => LieAlgebra::from_constants(5, None, &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1)]),
        "n_5_8" => LieAlgebra::from_constants(5, None, &[(1, 2, 4, 1), (1, 3, 5, 1)]),
        "n_5_9" => LieAlgebra::from_constants(5, None, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 5, 1)]),
        _ => return None,
    })
}

/// Nilpotency classes read off the defining relations.
fn nilpotent_class(name: &str) -> usize {
    match name {
        "n_3_1" | "n_4_1" | "n_5_1" => 1,
        "n_3_2" | "n_4_2" | "n_5_2" | "n_5_4" | "n_5_8" => 2,
        "n_4_3" | "n_5_3" | "n_5_5" | "n_5_9" => 3,
        "n_5_6" | "n_5_7" => 4,
        _ => unreachable!("not a classification entry"),
    }
}

pub const NILPOTENT_NAMES: [&str; 14] = [
    "n_3_1", "n_3_2", "n_4_1", "n_4_2", "n_4_3", "n_5_1", "n_5_2", "n_5_3", "n_5_4", "n_5_5",
    "n_5_6", "n_5_7", "n_5_8", "n_5_9",
];

pub const DIM5_NAMES: [&str; 9] = [
    "n_5_1", "n_5_2", "n_5_3", "n_5_4", "n_5_5", "n_5_6", "n_5_7", "n_5_8", "n_5_9",
];

/// Every named entry, in a fixed order.
pub fn list() -> Vec<String> {
    let mut out: Vec<String> = (1..=7).map(|n| format!("abelian({n})")).collect();
    out.extend((1..=4).map(|m| format!("h({m})")));
    out.extend(NILPOTENT_NAMES.iter().map(|s| s.to_string()));
    out.push("sl2".into());
    out.push("a_sh".into());
    out
}

/// Parses `abelian(7)`, `abelian_7`, `h(2)`, `h_2`.
fn parametrised(name: &str, family: &str) -> Option<usize> {
    let rest = name.strip_prefix(family)?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix('_'))?;
    digits.parse().ok()
}

pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::UnknownName(name.to_string());
    if let Some(n) = parametrised(name, "abelian") {
        return Ok(CatalogEntry {
            name: format!("abelian({n})"),
            algebra: LieAlgebra::abelian(n),
            expected: Expected {
                nilpotency_class: Some(Some(usize::from(n > 0))),
                center: Some(n),
                derived: Some(0),
                schur: Some(n * n * n.saturating_sub(1) / 2),
                abelian: Some(true),
            },
            notes: "zero bracket",
        });
    }
    if let Some(m) = parametrised(name, "h") {
        if m == 0 {
            return Err(unknown());
        }
        return Ok(CatalogEntry {
            name: format!("h({m})"),
            algebra: heisenberg(m),
            expected: Expected {
                nilpotency_class: Some(Some(2)),
                center: Some(1),
                derived: Some(1),
                abelian: Some(false),
                ..Expected::default()
            },
            notes: "[v_{2i-1}, v_{2i}] = v",
        });
    }
    match name {
        "sl2" => Ok(CatalogEntry {
            name: name.into(),
            algebra: sl2(),
            expected: Expected {
                nilpotency_class: Some(None),
                center: Some(0),
                derived: Some(3),
                schur: Some(0),
                abelian: Some(false),
            },
            notes: "basis (e, f, h): [h,e] = 2e, [h,f] = -2f, [e,f] = h",
        }),
        "a_sh" => Ok(CatalogEntry {
            name: name.into(),
            algebra: a_sh(),
            expected: Expected {
                nilpotency_class: Some(Some(2)),
                center: Some(3),
                derived: Some(1),
                abelian: Some(false),
                ..Expected::default()
            },
            notes: "[v1,v2] = [v3,v4] = [v1,v4] = [v3,v2] = v; v1 = A, v2 = B, v3 = B†, v4 = A†",
        }),
        _ => {
            let algebra = nilpotent(name).ok_or_else(unknown)?;
            let class = nilpotent_class(name);
            Ok(CatalogEntry {
                name: name.into(),
                expected: Expected {
                    nilpotency_class: Some(Some(class)),
                    abelian: Some(class == 1),
                    ..Expected::default()
                },
                algebra,
                notes: "classification of nilpotent algebras of dimension 3 to 5",
            })
        }
    }
}

/// Signature-level description of an algebra `s` with `[s,s] = Z(s)` of
/// dimension one and `s / Z(s)` abelian of dimension four.
pub fn swanson_predicate(sig: &InvariantSignature) -> bool {
    sig.dim == 5 && sig.center == 1 && sig.derived_dim() == 1 && sig.nilpotency_class == Some(2)
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub jacobi: bool,
    pub mismatches: Vec<&'static str>,
    pub signature: InvariantSignature,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.jacobi && self.mismatches.is_empty()
    }
}

pub fn check_entry(entry: &CatalogEntry) -> EntryCheck {
    let signature = invariant_signature(&entry.algebra);
    EntryCheck {
        name: entry.name.clone(),
        jacobi: entry.algebra.is_lie(),
        mismatches: entry.expected.mismatches(&signature),
        signature,
    }
}

/// Checks every entry against Jacobi and its documented invariants.
pub fn verify_all() -> Vec<EntryCheck> {
    list()
        .iter()
        .map(|n| check_entry(&get(n).expect("listed names resolve")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;
    use crate::linalg::SparseVec;

    #[test]
    fn n_5_6_relations() {
        let g = get("n_5_6").unwrap().algebra;
        let e = |k: usize| SparseVec::from([(k - 1, GaussRat::one())]);
        assert_eq!(g.bracket_basis(0, 1), e(3));
        assert_eq!(g.bracket_basis(0, 2), e(4));
        assert_eq!(g.bracket_basis(0, 3), e(5));
        assert_eq!(g.bracket_basis(1, 2), e(5));
        assert_eq!(g.brackets().count(), 4);
    }

    #[test]
    fn a_sh_relations() {
        let g = get("a_sh").unwrap().algebra;
        let v = SparseVec::from([(4, GaussRat::one())]);
        for (i, j) in [(0, 1), (2, 3), (0, 3), (2, 1)] {
            assert_eq!(g.bracket_basis(i, j), v);
        }
        assert!(g.bracket_basis(0, 2).is_empty());
        assert!(g.bracket_basis(1, 3).is_empty());
    }

    #[test]
    fn names_resolve() {
        assert!(get("abelian(7)").unwrap().algebra.is_abelian());
        assert_eq!(get("abelian_7").unwrap().algebra.dim(), 7);
        assert_eq!(get("h(3)").unwrap().algebra.dim(), 7);
        assert_eq!(
            get("n_6_1").unwrap_err(),
            CatalogError::UnknownName("n_6_1".into())
        );
        assert!(get("h(0)").is_err());
        assert!(list().iter().all(|n| get(n).is_ok()));
    }

    #[test]
    fn direct_sums_have_equal_constants() {
        let i = LieAlgebra::abelian(1);
        assert!(get("n_4_2")
            .unwrap()
            .algebra
            .same_constants(&heisenberg(1).direct_sum(&i)));
        assert!(get("n_5_2")
            .unwrap()
            .algebra
            .same_constants(&heisenberg(1).direct_sum(&i).direct_sum(&i)));
        assert!(get("n_5_3")
            .unwrap()
            .algebra
            .same_constants(&get("n_4_3").unwrap().algebra.direct_sum(&i)));
        assert!(get("n_5_1")
            .unwrap()
            .algebra
            .same_constants(&LieAlgebra::abelian(5)));
    }
}
