use serde::Serialize;

use super::combinatorics::{
    q_binomial, q_binomial_closed, q_integer, q_reciprocal_checks, subset_sum_binomial_check,
};
use super::expr::QExpr;
use super::normal::{normal_order, normal_order_at, NormalForm, Rule};
use super::QheisError;
use crate::exactnum::{GaussRat, LaurentPoly, Param};

fn q() -> LaurentPoly {
    LaurentPoly::var(Param::Q)
}

fn one() -> LaurentPoly {
    LaurentPoly::one(Param::Q)
}

fn a() -> QExpr {
    QExpr::letter('A')
}

fn b() -> QExpr {
    QExpr::letter('B')
}

fn choose2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// `AB^n = q^n B^n A + {n} B^{n-1}` and `A^n B = q^n B A^n + {n} A^{n-1}`.
pub fn verify_powandprod(n: u32) -> Result<(bool, bool), QheisError> {
    let k = n as usize;
    let qn = q().pow(n);
    let lhs1 = &a() * &b().pow(n);
    let rhs1 =
        &(&b().pow(n) * &a()).scale(&qn) + &b().pow(n.saturating_sub(1)).scale(&q_integer(k));
    let lhs2 = &a().pow(n) * &b();
    let rhs2 =
        &(&b() * &a().pow(n)).scale(&qn) + &a().pow(n.saturating_sub(1)).scale(&q_integer(k));
    let rule = Rule::symbolic();
    Ok((
        rule.verify_identity(&lhs1, &rhs1)?,
        rule.verify_identity(&lhs2, &rhs2)?,
    ))
}

/// `BA^n = q^{-n} A^n B - q^{-1} {n}_{1/q} A^{n-1}` and
/// `B^n A = q^{-n} A B^n - q^{-1} {n}_{1/q} B^{n-1}`, with `q = q0`.
pub fn verify_powandprod_reciprocal(n: u32, q0: &GaussRat) -> Result<(bool, bool), QheisError> {
    if q0.is_zero() {
        return Err(QheisError::QZero);
    }
    let inv = q0.inv()?;
    let c = |x: GaussRat| LaurentPoly::constant(Param::Q, x);
    let qmn = c(q0.pow(-(n as i64))?);
    let tail = c(&inv * &q_integer(n as usize).eval(&inv)?);
    let lhs1 = &b() * &a().pow(n);
    let rhs1 = &(&a().pow(n) * &b()).scale(&qmn) - &a().pow(n.saturating_sub(1)).scale(&tail);
    let lhs2 = &b().pow(n) * &a();
    let rhs2 = &(&a() * &b().pow(n)).scale(&qmn) - &b().pow(n.saturating_sub(1)).scale(&tail);
    let rule = Rule::at(q0.clone());
    Ok((
        rule.verify_identity(&lhs1, &rhs1)?,
        rule.verify_identity(&lhs2, &rhs2)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobiKind {
    /// `B^n A^n` as a combination of powers of `[A,B]`.
    Bnan,
    /// `A^n B^n` as a combination of powers of `[A,B]`.
    Anbn,
    /// `[B, B^m A^n] = (1 - q^n) B^{m+1} A^n - {n} B^m A^{n-1}`.
    BracketBmAn,
}

/// Normal forms of `(AB - BA)^k` for `k = 0..=n`.
fn commutator_powers(n: usize) -> Result<Vec<NormalForm>, QheisError> {
    let x = QExpr::commutator(&a(), &b());
    let mut out = vec![NormalForm::monomial(0, 0, one())];
    for k in 1..=n {
        let prev = out[k - 1].to_expr();
        out.push(normal_order(&(&prev * &x))?);
    }
    Ok(out)
}

fn scaled(nf: &NormalForm, c: &LaurentPoly) -> NormalForm {
    let mut out = NormalForm::zero();
    for (&(m, n), v) in nf.coeffs() {
        out.add(m, n, &(v * c));
    }
    out
}

fn sum_into(acc: &mut NormalForm, nf: &NormalForm) {
    for (&(m, n), v) in nf.coeffs() {
        acc.add(m, n, v);
    }
}

/// Checks one of the generalized Jacobi identities; the first two are
/// compared after multiplying through by their denominators. `m` is only
/// used by `BracketBmAn`.
pub fn verify_generalized_jacobi(
    which: JacobiKind,
    n: usize,
    m: usize,
) -> Result<bool, QheisError> {
    let qm1 = &q() - &one();
    let sign = |e: usize| if e.is_multiple_of(2) { one() } else { -one() };
    match which {
        JacobiKind::Bnan | JacobiKind::Anbn => {
            let word = if which == JacobiKind::Bnan {
                &b().pow(n as u32) * &a().pow(n as u32)
            } else {
                &a().pow(n as u32) * &b().pow(n as u32)
            };
            let denom = if which == JacobiKind::Bnan {
                &qm1.pow(n as u32) * &q().pow(choose2(n) as u32)
            } else {
                qm1.pow(n as u32)
            };
            let lhs = scaled(&normal_order(&word)?, &denom);
            let powers = commutator_powers(n)?;
            let mut rhs = NormalForm::zero();
            for (k, xk) in powers.iter().enumerate() {
                let e = if which == JacobiKind::Bnan {
                    choose2(n - k)
                } else {
                    choose2(k + 1)
                };
                let c = &(&sign(n - k) * &q().pow(e as u32)) * &q_binomial(n, k);
                sum_into(&mut rhs, &scaled(xk, &c));
            }
            Ok(lhs == rhs)
        }
        JacobiKind::BracketBmAn => {
            if n == 0 {
                return Ok(true);
            }
            let bman = &b().pow(m as u32) * &a().pow(n as u32);
            let lhs = QExpr::commutator(&b(), &bman);
            let rhs = &(&b().pow(m as u32 + 1) * &a().pow(n as u32))
                .scale(&(&one() - &q().pow(n as u32)))
                - &(&b().pow(m as u32) * &a().pow(n as u32 - 1)).scale(&q_integer(n));
            Rule::symbolic().verify_identity(&lhs, &rhs)
        }
    }
}

/// Normal form of `A^n B^m` at `q = 0`.
pub fn q_zero_products(n: usize, m: usize) -> NormalForm {
    let e = &a().pow(n as u32) * &b().pow(m as u32);
    normal_order_at(&e, &GaussRat::zero()).expect("letters A and B only")
}

/// `A^{n-m}` when `n >= m`, else `B^{m-n}`.
pub fn q_zero_expected(n: usize, m: usize) -> NormalForm {
    if n >= m {
        NormalForm::monomial(0, n - m, one())
    } else {
        NormalForm::monomial(m - n, 0, one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeIdentity {
    Bilinear,
    Antisym1,
    Antisym2,
    Jacobi1,
    Jacobi2,
    Jacobi3,
}

impl FreeIdentity {
    pub const ALL: [FreeIdentity; 6] = [
        FreeIdentity::Bilinear,
        FreeIdentity::Antisym1,
        FreeIdentity::Antisym2,
        FreeIdentity::Jacobi1,
        FreeIdentity::Jacobi2,
        FreeIdentity::Jacobi3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FreeIdentity::Bilinear => "bilinear",
            FreeIdentity::Antisym1 => "antisym1",
            FreeIdentity::Antisym2 => "antisym2",
            FreeIdentity::Jacobi1 => "jacobi1",
            FreeIdentity::Jacobi2 => "jacobi2",
            FreeIdentity::Jacobi3 => "jacobi3",
        }
    }
}

/// Compares both sides as elements of the free algebra on `A, B, C`.
/// `q0 = None` keeps `q` symbolic.
pub fn free_identity_check(which: FreeIdentity, q0: Option<&GaussRat>) -> Result<bool, QheisError> {
    let qv = match q0 {
        None => q(),
        Some(v) => LaurentPoly::constant(Param::Q, v.clone()),
    };
    let qinv = match q0 {
        None => LaurentPoly::monomial(Param::Q, GaussRat::one(), -1),
        Some(v) if v.is_zero() => {
            if which == FreeIdentity::Antisym1 {
                return Err(QheisError::QZero);
            }
            LaurentPoly::zero(Param::Q)
        }
        Some(v) => LaurentPoly::constant(Param::Q, v.inv()?),
    };
    let (x, y, z) = (a(), b(), QExpr::letter('C'));
    let qm = |u: &QExpr, v: &QExpr| QExpr::q_mutator(u, v, &qv);
    let cm = QExpr::commutator;
    let (lhs, rhs) = match which {
        FreeIdentity::Bilinear => {
            let alpha = GaussRat::complex((2, 1), (1, 1));
            let beta = GaussRat::ratio(-1, 3);
            let comb = &x.scale_const(&alpha) + &y.scale_const(&beta);
            let left = &(&qm(&comb, &z) - &qm(&x, &z).scale_const(&alpha))
                - &qm(&y, &z).scale_const(&beta);
            let right = &(&qm(&z, &comb) - &qm(&z, &x).scale_const(&alpha))
                - &qm(&z, &y).scale_const(&beta);
            return Ok(left.is_zero() && right.is_zero());
        }
        FreeIdentity::Antisym1 => (qm(&x, &y), QExpr::q_mutator(&y, &x, &qinv).scale(&-&qv)),
        FreeIdentity::Antisym2 => (qm(&y, &x), &qm(&x, &y) - &cm(&x, &y).scale(&(&one() + &qv))),
        FreeIdentity::Jacobi1 => (
            qm(&(&x * &y), &z),
            &cm(&x, &(&y * &z)) + &qm(&y, &(&z * &x)),
        ),
        FreeIdentity::Jacobi2 => (
            qm(&x, &(&y * &z)),
            &qm(&(&x * &y), &z) + &cm(&(&z * &x), &y).scale(&qv),
        ),
        FreeIdentity::Jacobi3 => {
            let lhs = &(&qm(&x, &qm(&y, &z)) + &qm(&y, &qm(&z, &x))) + &qm(&z, &qm(&x, &y));
            let w = QExpr::word;
            let even = &(&w("ABC") + &w("BCA")) + &w("CAB");
            let odd = &(&w("ACB") + &w("BAC")) + &w("CBA");
            (lhs, (&even - &odd.scale(&qv)).scale(&(&one() - &qv)))
        }
    };
    Ok(lhs == rhs)
}

/// One row of the identity table.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
    /// Reported without affecting `passed`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn row(name: String, passed: bool) -> IdentityResult {
    IdentityResult {
        name,
        passed,
        note: None,
    }
}

pub const RECIPROCAL_POINTS: [(i64, i64); 4] = [(-1, 1), (-1, 2), (1, 3), (2, 1)];

/// Largest `n` used by each family in [`verify_suite`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteLimits {
    pub binomial: usize,
    pub powandprod: usize,
    pub reciprocal: usize,
    pub jacobi: usize,
    pub q_zero: usize,
    pub subset_sum: usize,
}

impl SuiteLimits {
    /// Everything up to `max_n`, with generalized Jacobi capped at 6 and the
    /// reciprocal, `q = 0` and subset-sum tables at 8.
    pub fn up_to(max_n: usize) -> Self {
        SuiteLimits {
            binomial: max_n,
            powandprod: max_n,
            reciprocal: max_n.min(8),
            jacobi: max_n.min(6),
            q_zero: max_n.min(8),
            subset_sum: max_n.min(8),
        }
    }
}

pub fn verify_suite(limits: SuiteLimits) -> Result<Vec<IdentityResult>, QheisError> {
    let mut out = Vec::new();
    for n in 0..=limits.binomial {
        let all = (0..=n + 1).all(|k| q_binomial_closed(n, k).is_ok_and(|c| c == q_binomial(n, k)));
        out.push(row(format!("q_binomial closed form n={n}"), all));
    }
    for n in 1..=limits.powandprod as u32 {
        let (x, y) = verify_powandprod(n)?;
        out.push(row(format!("AB^n n={n}"), x));
        out.push(row(format!("A^nB n={n}"), y));
    }
    for n in 1..=limits.reciprocal as u32 {
        for &(num, den) in &RECIPROCAL_POINTS {
            let q0 = GaussRat::ratio(num, den);
            let (x, y) = verify_powandprod_reciprocal(n, &q0)?;
            out.push(row(format!("BA^n n={n} q={q0}"), x));
            out.push(row(format!("B^nA n={n} q={q0}"), y));
        }
    }
    for n in 1..=limits.reciprocal {
        for k in 0..=n {
            for &(num, den) in &RECIPROCAL_POINTS {
                let q0 = GaussRat::ratio(num, den);
                let r = q_reciprocal_checks(n, k, &q0)?;
                let mut res = row(format!("reciprocal n={n} k={k} q={q0}"), r.holds());
                if !r.printed_factorial_holds() {
                    res.note = Some("printed factorial line differs".into());
                }
                out.push(res);
            }
        }
    }
    for n in 0..=limits.subset_sum {
        for k in 0..=n {
            let r = subset_sum_binomial_check(n, k);
            let mut res = row(format!("subset sum n={n} k={k}"), r.holds());
            if !r.printed_form_holds() {
                res.note = Some("printed summand differs".into());
            }
            out.push(res);
        }
    }
    for n in 1..=limits.jacobi {
        out.push(row(
            format!("bnan n={n}"),
            verify_generalized_jacobi(JacobiKind::Bnan, n, 0)?,
        ));
        out.push(row(
            format!("anbn n={n}"),
            verify_generalized_jacobi(JacobiKind::Anbn, n, 0)?,
        ));
    }
    for m in 1..=limits.jacobi {
        for n in 1..=limits.jacobi {
            out.push(row(
                format!("bracketBmAn m={m} n={n}"),
                verify_generalized_jacobi(JacobiKind::BracketBmAn, n, m)?,
            ));
        }
    }
    for n in 0..=limits.q_zero {
        for m in 0..=limits.q_zero {
            out.push(row(
                format!("q=0 A^{n}B^{m}"),
                q_zero_products(n, m) == q_zero_expected(n, m),
            ));
        }
    }
    let points = [
        None,
        Some(GaussRat::from_int(-1)),
        Some(GaussRat::ratio(1, 2)),
        Some(GaussRat::from_int(2)),
    ];
    for id in FreeIdentity::ALL {
        for p in &points {
            let label = p
                .as_ref()
                .map_or("symbolic".to_string(), |v| format!("q={v}"));
            out.push(row(
                format!("free {} {label}", id.name()),
                free_identity_check(id, p.as_ref())?,
            ));
        }
    }
    for n in 1..=limits.powandprod as u32 {
        // classical Weyl algebra at q = 1
        let lhs = &a() * &b().pow(n);
        let rhs =
            &(&b().pow(n) * &a()) + &b().pow(n - 1).scale_const(&GaussRat::from_int(n as i64));
        out.push(row(
            format!("q=1 AB^n n={n}"),
            Rule::at(GaussRat::one()).verify_identity(&lhs, &rhs)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powandprod_up_to_twelve() {
        for n in 1..=12 {
            assert_eq!(verify_powandprod(n).unwrap(), (true, true), "n={n}");
        }
    }

    #[test]
    fn reciprocal_batch() {
        assert_eq!(
            verify_powandprod_reciprocal(1, &GaussRat::ratio(1, 2)).unwrap(),
            (true, true)
        );
        assert_eq!(
            verify_powandprod_reciprocal(2, &GaussRat::from_int(-1)).unwrap(),
            (true, true)
        );
        for n in 1..=8 {
            for &(num, den) in &RECIPROCAL_POINTS {
                let r = verify_powandprod_reciprocal(n, &GaussRat::ratio(num, den)).unwrap();
                assert_eq!(r, (true, true), "n={n} q={num}/{den}");
            }
        }
        assert!(matches!(
            verify_powandprod_reciprocal(1, &GaussRat::zero()),
            Err(QheisError::QZero)
        ));
    }

    #[test]
    fn generalized_jacobi_batch() {
        for n in 1..=6 {
            assert!(
                verify_generalized_jacobi(JacobiKind::Bnan, n, 0).unwrap(),
                "bnan {n}"
            );
            assert!(
                verify_generalized_jacobi(JacobiKind::Anbn, n, 0).unwrap(),
                "anbn {n}"
            );
        }
        for m in 1..=4 {
            for n in 1..=4 {
                assert!(
                    verify_generalized_jacobi(JacobiKind::BracketBmAn, n, m).unwrap(),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn bracket_b_ba() {
        let lhs = QExpr::commutator(&b(), &(&b() * &a()));
        let rhs = &QExpr::word("BBA").scale(&(&one() - &q())) - &b();
        assert!(Rule::symbolic().verify_identity(&lhs, &rhs).unwrap());
    }

    #[test]
    fn q_zero_table() {
        assert_eq!(q_zero_products(2, 2), NormalForm::monomial(0, 0, one()));
        assert_eq!(q_zero_products(3, 1), NormalForm::monomial(0, 2, one()));
        assert_eq!(q_zero_products(1, 4), NormalForm::monomial(3, 0, one()));
        for n in 0..=8 {
            for m in 0..=8 {
                assert_eq!(q_zero_products(n, m), q_zero_expected(n, m));
            }
        }
    }

    #[test]
    fn free_identities() {
        for id in FreeIdentity::ALL {
            assert!(free_identity_check(id, None).unwrap(), "{id:?}");
            assert!(
                free_identity_check(id, Some(&GaussRat::ratio(-3, 2))).unwrap(),
                "{id:?}"
            );
        }
        assert!(matches!(
            free_identity_check(FreeIdentity::Antisym1, Some(&GaussRat::zero())),
            Err(QheisError::QZero)
        ));
        assert!(free_identity_check(FreeIdentity::Jacobi3, Some(&GaussRat::zero())).unwrap());
    }

    #[test]
    fn suite_passes() {
        let rows = verify_suite(SuiteLimits::up_to(5)).unwrap();
        let failed: Vec<_> = rows
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.name.clone())
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
