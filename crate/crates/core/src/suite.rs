//! The twelve end-to-end verification criteria, shared by `lieq verify-all`
//! and the acceptance test target.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, heisenberg, DIM5_NAMES};
use crate::cohomology::{
    betti_row, d_squared_check, derivation_algebra, is_two_cocycle_trivial_coeffs, Cochain,
    CochainSpace, Representation,
};
use crate::deform::{
    bracket_as_cochain, direct_residuals, rigidity_report, DeformError, DeformedBracket,
};
use crate::exactnum::GaussRat;
use crate::extend::{central_extension, coboundary_shift_iso, induced_cocycle};
use crate::fock::{
    biorthogonal_pair, car_pair, check_qccr, closed_form_spectrum, cuntz_toeplitz, monomial_rep,
    number_operator_spectrum, shifted_pair, similarity_transport, size_cap,
};
use crate::liealg::{invariant_signature, InvariantSignature, LieAlgebra};
use crate::linalg::{unit, SparseMatrix, SparseVec};
use crate::qheis::{verify_suite, SuiteLimits};
use crate::report::Report;

pub const DEFAULT_SEED: u64 = 0x5eed_1e9a;

/// Independently computed signatures, keyed by catalog name.
pub const GOLDEN_SIGNATURES: &str = include_str!("../tests/golden/signatures.json");

pub fn golden_signatures() -> BTreeMap<String, InvariantSignature> {
    serde_json::from_str(GOLDEN_SIGNATURES).expect("golden signature file is valid")
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
    pub limit_ms: Option<u64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let limit = self
            .limit_ms
            .map_or(String::new(), |l| format!(", limit {l} ms"));
        let mut s = format!(
            "{tag} [{:>2}] {} ({} checks, {} ms{limit})",
            self.id, self.title, self.checks, self.elapsed_ms
        );
        for f in self.failures.iter().take(5) {
            s.push_str(&format!("\n       - {f}"));
        }
        s
    }
}

/// Counts checks and collects failure descriptions.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn run(
    id: usize,
    title: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce(&mut Tally),
) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    body(&mut t);
    let elapsed = start.elapsed();
    if let Some(l) = limit {
        t.check(elapsed <= l, || {
            format!(
                "took {} ms, limit {} ms",
                elapsed.as_millis(),
                l.as_millis()
            )
        });
    }
    CriterionResult {
        id,
        title,
        passed: t.failures.is_empty(),
        checks: t.checks,
        failures: t.failures,
        elapsed_ms: elapsed.as_millis() as u64,
        limit_ms: limit.map(|l| l.as_millis() as u64),
    }
}

fn algebra(name: &str) -> LieAlgebra {
    catalog::get(name).expect("catalog name").algebra
}

fn rand_rat(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> GaussRat {
    GaussRat::ratio(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

pub fn catalog_integrity() -> CriterionResult {
    run(1, "catalog integrity", Some(Duration::from_secs(2)), |t| {
        for check in catalog::verify_all() {
            t.check(check.jacobi, || format!("{}: Jacobi fails", check.name));
            t.check(check.mismatches.is_empty(), || {
                format!("{}: mismatched {:?}", check.name, check.mismatches)
            });
        }
        let i = LieAlgebra::abelian(1);
        let sig = |g: &LieAlgebra| invariant_signature(g);
        let pairs = [
            ("n_3_2", "h(1)", sig(&algebra("n_3_2")), sig(&heisenberg(1))),
            ("n_5_4", "h(2)", sig(&algebra("n_5_4")), sig(&heisenberg(2))),
            (
                "n_5_2",
                "h(1)+i+i",
                sig(&algebra("n_5_2")),
                sig(&heisenberg(1).direct_sum(&i).direct_sum(&i)),
            ),
            (
                "n_5_2",
                "a_sh",
                sig(&algebra("n_5_2")),
                sig(&algebra("a_sh")),
            ),
        ];
        for (a, b, x, y) in pairs {
            t.check(x == y, || format!("signatures of {a} and {b} differ"));
        }
    })
}

pub fn dim5_signatures() -> CriterionResult {
    run(2, "distinct dimension-5 signatures", None, |t| {
        let golden = golden_signatures();
        let sigs: Vec<(&str, InvariantSignature)> = DIM5_NAMES
            .iter()
            .map(|&n| (n, invariant_signature(&algebra(n))))
            .collect();
        for (name, s) in &sigs {
            t.check(golden.get(*name) == Some(s), || {
                format!("{name}: signature differs from golden file")
            });
        }
        for (k, (a, x)) in sigs.iter().enumerate() {
            for (b, y) in &sigs[k + 1..] {
                t.check(x != y, || format!("{a} and {b} share a signature"));
            }
        }
    })
}

pub fn sl2_cohomology() -> CriterionResult {
    run(
        3,
        "sl2 cohomology and rigidity",
        Some(Duration::from_secs(1)),
        |t| {
            let g = catalog::sl2();
            let rep = Representation::adjoint(&g);
            let der = derivation_algebra(&g);
            t.check(der.dim() == 3, || format!("dim Der = {}", der.dim()));
            t.check(der.inner_dim() == 3, || {
                format!("dim Inn = {}", der.inner_dim())
            });
            let h1 = betti_row(&rep, 1).cohomology;
            let h2 = betti_row(&rep, 2).cohomology;
            t.check(h1 == 0, || format!("dim H1 = {h1}"));
            t.check(h2 == 0, || format!("dim H2 = {h2}"));
            let r = rigidity_report(&g);
            t.check(r.orbit_tangent_dim == 6 && r.b2_dim == 6, || {
                format!("tangent {} vs B2 {}", r.orbit_tangent_dim, r.b2_dim)
            });
            t.check(r.nr_rigid && r.tangent_equals_b2, || {
                "rigidity flags".into()
            });
        },
    )
}

pub fn d_squared() -> CriterionResult {
    run(4, "d^2 = 0 on every catalog algebra", None, |t| {
        for name in catalog::list() {
            let g = algebra(&name);
            for rep in [Representation::adjoint(&g), Representation::trivial(&g, 1)] {
                for k in 0..=g.dim() {
                    t.check(d_squared_check(&rep, k), || {
                        format!("{name} {:?} k={k}", rep.kind())
                    });
                }
            }
        }
    })
}

fn random_one_cochain(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Cochain {
    let mut c = Cochain::zero(n, 1, m);
    for i in 0..n {
        let v: SparseVec = (0..m)
            .map(|a| (a, rand_rat(rng, 3, 2)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        c.set(&[i], v).expect("valid index");
    }
    c
}

pub fn skjelbred_sund(seed: u64) -> CriterionResult {
    run(
        5,
        "central extension round trip",
        Some(Duration::from_secs(5)),
        |t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for name in catalog::list() {
                let g = algebra(&name);
                if !g.is_nilpotent() || g.center().is_zero() {
                    continue;
                }
                let induced = match induced_cocycle(&g) {
                    Ok(x) => x,
                    Err(e) => {
                        t.check(false, || format!("{name}: {e}"));
                        continue;
                    }
                };
                t.check(induced.verify(&g), || {
                    format!("{name}: induced map is not an isomorphism")
                });
                let ext = central_extension(&induced.quotient, &induced.theta)
                    .expect("cocycle already checked");
                t.check(invariant_signature(&ext) == invariant_signature(&g), || {
                    format!("{name}: signature changed")
                });
                let (k, m) = (induced.quotient.dim(), induced.theta.target_dim());
                for _ in 0..20 {
                    let c = random_one_cochain(&mut rng, k, m);
                    let ok = coboundary_shift_iso(&induced.quotient, &induced.theta, &c)
                        .is_ok_and(|s| s.intertwines);
                    t.check(ok, || format!("{name}: shift isomorphism fails"));
                }
            }
        },
    )
}

/// `φ(e1,e2) = e1`, `φ(e2,e3) = e2` over the zero bracket on three
/// generators: the cyclic condition holds vacuously, but `[φ, φ] ≠ 0`.
pub fn cyclic_but_not_lie() -> (LieAlgebra, Cochain) {
    let phi = Cochain::zero(3, 2, 3)
        .with(&[0, 1], unit(0))
        .expect("pair")
        .with(&[1, 2], unit(1))
        .expect("pair");
    (LieAlgebra::abelian(3), phi)
}

fn random_two_cochain(rng: &mut ChaCha8Rng, n: usize) -> Cochain {
    let space = CochainSpace::new(n, 2, n);
    let mut v = SparseVec::new();
    for i in 0..space.dim() {
        let x = rng.gen_range(-2..=2);
        if x != 0 && rng.gen_bool(0.3) {
            v.insert(i, GaussRat::from_int(x));
        }
    }
    Cochain::from_vector(&space, &v)
}

pub fn deformation_engine(seed: u64) -> CriterionResult {
    run(6, "deformation engine", None, |t| {
        for name in catalog::list() {
            let g = algebra(&name);
            let d = DeformedBracket::linear(&LieAlgebra::abelian(g.dim()), bracket_as_cochain(&g))
                .expect("same dim");
            t.check(d.is_lie().is_ok(), || format!("zero base + {name} bracket"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 6);
        let bases = ["n_4_1", "n_4_2", "n_4_3", "h(1)", "sl2"];
        for case in 0..50 {
            let g = algebra(bases.choose(&mut rng).expect("non-empty"));
            let order = rng.gen_range(1..=2);
            let phis = (0..order)
                .map(|_| random_two_cochain(&mut rng, g.dim()))
                .collect();
            let d = DeformedBracket::new(&g, phis).expect("matching dims");
            let t0 = rand_rat(&mut rng, 5, 3);
            let ok =
                d.jacobi_polynomial().eval(&t0) == direct_residuals(&d.evaluate_unchecked(&t0));
            t.check(ok, || format!("graded case {case} at t = {t0}"));
        }
        let (base, phi) = cyclic_but_not_lie();
        t.check(
            is_two_cocycle_trivial_coeffs(&base, &phi) == Ok(true),
            || "counterexample is not cyclic".into(),
        );
        let d = DeformedBracket::linear(&base, phi).expect("same dim");
        t.check(d.is_lie().is_err(), || {
            "counterexample passes the graded check".into()
        });
        t.check(
            matches!(
                d.evaluate_at(&GaussRat::one(), false),
                Err(DeformError::NotLieAtParameter { .. })
            ),
            || "counterexample evaluates as Lie".into(),
        );
    })
}

/// Limits used by the q-identity criterion.
pub fn acceptance_limits() -> SuiteLimits {
    SuiteLimits {
        binomial: 20,
        powandprod: 12,
        reciprocal: 12,
        jacobi: 6,
        q_zero: 8,
        subset_sum: 8,
    }
}

pub fn q_identities() -> CriterionResult {
    run(
        7,
        "q-identity suite",
        Some(Duration::from_secs(10)),
        |t| match verify_suite(acceptance_limits()) {
            Ok(rows) => {
                for r in rows {
                    t.check(r.passed, || r.name.clone());
                }
            }
            Err(e) => t.check(false, || e.to_string()),
        },
    )
}

pub const FOCK_POINTS: [(i64, i64); 5] = [(-1, 1), (-1, 2), (0, 1), (1, 3), (1, 1)];

pub fn fock_interior() -> CriterionResult {
    run(
        8,
        "truncated q-CCR exactness",
        Some(Duration::from_secs(3)),
        |t| {
            for &(num, den) in &FOCK_POINTS {
                let q0 = GaussRat::ratio(num, den);
                for n in [8, 32, 64] {
                    let d = check_qccr(&q0, n).expect("n >= 2");
                    t.check(d.holds(), || {
                        format!("defect q={q0} N={n}: corner {}", d.corner)
                    });
                    let (a, b) = monomial_rep(&q0, n).expect("n >= 2");
                    let spec = number_operator_spectrum(&a, &b);
                    t.check(
                        spec.as_ref()
                            .is_ok_and(|s| *s == closed_form_spectrum(&q0, n)),
                        || format!("spectrum q={q0} N={n}"),
                    );
                }
            }
        },
    )
}

pub fn biorthogonality(seed: u64) -> CriterionResult {
    run(9, "biorthogonal systems", None, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
        for case in 0..10 {
            let n = rng.gen_range(2..=32);
            let weights: Vec<GaussRat> = (0..n)
                .map(|_| GaussRat::ratio(rng.gen_range(1..=20), rng.gen_range(1..=9)))
                .collect();
            for q0 in [GaussRat::one(), GaussRat::ratio(1, 2)] {
                match biorthogonal_pair(&weights, &q0) {
                    Ok(s) => {
                        t.check(s.is_biorthonormal(), || {
                            format!("case {case} q={q0}: pairing")
                        });
                        t.check(s.ladder_holds(), || format!("case {case} q={q0}: ladder"));
                        t.check(s.vacua_annihilated(), || {
                            format!("case {case} q={q0}: vacua")
                        });
                    }
                    Err(e) => t.check(false, || e.to_string()),
                }
            }
        }
    })
}

pub fn shifted_a_sh() -> CriterionResult {
    run(10, "shifted pair realises a_sh", None, |t| {
        let p = match shifted_pair(&GaussRat::one(), &GaussRat::i(), 8) {
            Ok(p) => p,
            Err(e) => return t.check(false, || e.to_string()),
        };
        // [v1,v2] = [v3,v4] = [v1,v4] = [v3,v2] = v, everything else commutes
        let expected = |i: usize, j: usize| match (i, j) {
            (0, 1) | (2, 3) | (0, 3) => 1,
            (1, 2) => -1,
            _ => 0,
        };
        for i in 0..4 {
            for j in i..4 {
                let want = GaussRat::from_int(expected(i, j));
                t.check(p.interior_scalar(i, j) == Some(want), || {
                    format!("commutator ({i},{j})")
                });
            }
        }
        t.check(
            p.structure_algebra()
                .is_ok_and(|g| g.same_constants(&catalog::a_sh())),
            || "constants differ".into(),
        );
    })
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> (SparseMatrix, SparseMatrix) {
    loop {
        let rows: Vec<Vec<GaussRat>> = (0..n)
            .map(|_| (0..n).map(|_| rand_rat(rng, 4, 3)).collect())
            .collect();
        let t = SparseMatrix::from_dense(&rows);
        if let Ok(inv) = t.inverse() {
            return (t, inv);
        }
    }
}

pub fn similarity(seed: u64) -> CriterionResult {
    run(11, "similarity transport", None, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 11);
        let car = car_pair();
        for case in 0..25 {
            let (tm, _) = random_invertible(&mut rng, 2);
            let r = similarity_transport(std::slice::from_ref(&car), &tm, &GaussRat::from_int(-1));
            t.check(
                r.is_ok_and(|r| r.conjugation_holds && r.source_exact && r.target_exact),
                || format!("CAR case {case}"),
            );
        }
        for q0 in [GaussRat::zero(), GaussRat::ratio(1, 3), GaussRat::one()] {
            let n = 6;
            let pair = monomial_rep(&q0, n).expect("n >= 2");
            let (tm, _) = random_invertible(&mut rng, n);
            let r = similarity_transport(&[pair], &tm, &q0);
            t.check(r.is_ok_and(|r| r.conjugation_holds), || {
                format!("truncated q={q0}")
            });
        }
    })
}

pub fn cuntz() -> CriterionResult {
    run(
        12,
        "Cuntz-Toeplitz relations",
        Some(Duration::from_secs(5)),
        |t| {
            for d in [2, 3] {
                for depth in 1..=4 {
                    match cuntz_toeplitz(d, depth, size_cap()) {
                        Ok(f) => t.check(f.check().holds(), || format!("d={d} L={depth}")),
                        Err(e) => t.check(false, || format!("d={d} L={depth}: {e}")),
                    }
                }
            }
        },
    )
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        catalog_integrity(),
        dim5_signatures(),
        sl2_cohomology(),
        d_squared(),
        skjelbred_sund(seed),
        deformation_engine(seed),
        q_identities(),
        fock_interior(),
        biorthogonality(seed),
        shifted_a_sh(),
        similarity(seed),
        cuntz(),
    ]
}

pub fn to_report(results: &[CriterionResult], elapsed: Duration) -> Report {
    let mut r = Report::new("verify-all");
    for c in results {
        let actual = if c.passed {
            "pass".to_string()
        } else {
            format!("fail: {}", c.failures.join("; "))
        };
        r.push(format!("[{}] {}", c.id, c.title), "pass", actual, c.passed);
    }
    r.with_timing(elapsed)
}
