use std::collections::HashMap;

use serde::Serialize;

use super::QheisError;
use crate::exactnum::{ExactError, GaussRat, LaurentPoly, Param};

/// `{n}_q = 1 + q + … + q^{n-1}`; `{0}_q = 0`.
pub fn q_integer(n: usize) -> LaurentPoly {
    LaurentPoly::from_coeffs(Param::Q, (0..n as i64).map(|l| (l, GaussRat::one())))
}

/// `{n}_q! = {1}_q {2}_q … {n}_q`; `{0}_q! = 1`.
pub fn q_factorial(n: usize) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(Param::Q), |acc, l| &acc * &q_integer(l))
}

/// Gaussian binomial by the recursion `{n,k} = {n-1,k-1} + q^k {n-1,k}`.
pub fn q_binomial(n: usize, k: usize) -> LaurentPoly {
    let mut memo = HashMap::new();
    binomial_rec(n, k, &mut memo)
}

fn binomial_rec(
    n: usize,
    k: usize,
    memo: &mut HashMap<(usize, usize), LaurentPoly>,
) -> LaurentPoly {
    if k > n {
        return LaurentPoly::zero(Param::Q);
    }
    if k == 0 || k == n {
        return LaurentPoly::one(Param::Q);
    }
    if let Some(p) = memo.get(&(n, k)) {
        return p.clone();
    }
    let p = &binomial_rec(n - 1, k - 1, memo) + &binomial_rec(n - 1, k, memo).shift(k as i64);
    memo.insert((n, k), p.clone());
    p
}

/// `{n}_q! / ({k}_q! {n-k}_q!)` by exact polynomial division, one factor at a time.
pub fn q_binomial_closed(n: usize, k: usize) -> Result<LaurentPoly, ExactError> {
    if k > n {
        return Ok(LaurentPoly::zero(Param::Q));
    }
    // {n}!/({k}!{n-k}!) telescoped; every partial quotient is itself a binomial.
    let mut acc = LaurentPoly::one(Param::Q);
    for j in 1..=k {
        acc = (&acc * &q_integer(n - k + j)).div_exact(&q_integer(j))?;
    }
    Ok(acc)
}

/// Both sides of each reciprocal identity evaluated at `q0`.
#[derive(Clone, Debug, Serialize)]
pub struct ReciprocalReport {
    pub n: usize,
    pub k: usize,
    pub q0: GaussRat,
    /// `{n}_{1/q} = q^{1-n} {n}_q`
    pub integer: (GaussRat, GaussRat),
    /// `{n}_{1/q}! = q^{-C(n,2)} {n}_q!`
    pub factorial: (GaussRat, GaussRat),
    /// `{n,k}_{1/q} = q^{-k(n-k)} {n,k}_q`
    pub binomial: (GaussRat, GaussRat),
    /// The factorial line with `{n}_q` in place of `{n}_q!` on the right.
    pub printed_factorial_rhs: GaussRat,
}

impl ReciprocalReport {
    pub fn holds(&self) -> bool {
        self.integer.0 == self.integer.1
            && self.factorial.0 == self.factorial.1
            && self.binomial.0 == self.binomial.1
    }

    pub fn printed_factorial_holds(&self) -> bool {
        self.factorial.0 == self.printed_factorial_rhs
    }
}

pub fn q_reciprocal_checks(
    n: usize,
    k: usize,
    q0: &GaussRat,
) -> Result<ReciprocalReport, QheisError> {
    if q0.is_zero() {
        return Err(QheisError::QZero);
    }
    let inv = q0.inv()?;
    let at = |p: &LaurentPoly, x: &GaussRat| p.eval(x).expect("q0 is nonzero");
    let pw = |e: i64| q0.pow(e).expect("q0 is nonzero");
    let c2 = (n * n.saturating_sub(1) / 2) as i64;
    let kk = k.min(n);
    Ok(ReciprocalReport {
        n,
        k,
        q0: q0.clone(),
        integer: (
            at(&q_integer(n), &inv),
            &pw(1 - n as i64) * &at(&q_integer(n), q0),
        ),
        factorial: (
            at(&q_factorial(n), &inv),
            &pw(-c2) * &at(&q_factorial(n), q0),
        ),
        binomial: (
            at(&q_binomial(n, k), &inv),
            &pw(-((kk * (n - kk)) as i64)) * &at(&q_binomial(n, k), q0),
        ),
        printed_factorial_rhs: &pw(-c2) * &at(&q_integer(n), q0),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetSumReport {
    pub n: usize,
    pub k: usize,
    /// `Σ_{|S|=k} q^{Σ S - k(k+1)/2}`
    pub shifted_sum: LaurentPoly,
    /// `Σ_{|S|=k} 2 q^{Σ S} / (k(k+1))`
    pub printed_sum: LaurentPoly,
    pub binomial: LaurentPoly,
}

impl SubsetSumReport {
    pub fn holds(&self) -> bool {
        self.shifted_sum == self.binomial
    }

    pub fn printed_form_holds(&self) -> bool {
        self.printed_sum == self.binomial
    }
}

pub fn subset_sum_binomial_check(n: usize, k: usize) -> SubsetSumReport {
    let mut shifted = LaurentPoly::zero(Param::Q);
    let mut printed = LaurentPoly::zero(Param::Q);
    let base = (k * (k + 1) / 2) as i64;
    let weight = if k == 0 {
        GaussRat::zero()
    } else {
        GaussRat::ratio(2, (k * (k + 1)) as i64)
    };
    for s in crate::cohomology::increasing_tuples(n, k) {
        let total: i64 = s.iter().map(|&x| x as i64 + 1).sum();
        shifted.add_term(total - base, &GaussRat::one());
        printed.add_term(total, &weight);
    }
    SubsetSumReport {
        n,
        k,
        shifted_sum: shifted,
        printed_sum: printed,
        binomial: q_binomial(n, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(cs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(Param::Q, cs)
    }

    #[test]
    fn telescoped_matches_factorial_quotient() {
        for n in 0..=7 {
            for k in 0..=n {
                let direct = q_factorial(n)
                    .div_exact(&(&q_factorial(k) * &q_factorial(n - k)))
                    .unwrap();
                assert_eq!(q_binomial_closed(n, k).unwrap(), direct, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn integers_and_factorials() {
        assert_eq!(q_integer(3), ints(&[1, 1, 1]));
        assert_eq!(q_integer(1), LaurentPoly::one(Param::Q));
        assert!(q_integer(0).is_zero());
        assert_eq!(q_factorial(0), LaurentPoly::one(Param::Q));
        assert_eq!(q_factorial(3), &ints(&[1, 1]) * &ints(&[1, 1, 1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(q_binomial(2, 1), ints(&[1, 1]));
        assert_eq!(q_binomial(4, 2), ints(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(5, 5), LaurentPoly::one(Param::Q));
        assert!(q_binomial(2, 3).is_zero());
        for n in 0..=12 {
            for k in 0..=n + 1 {
                assert_eq!(q_binomial_closed(n, k).unwrap(), q_binomial(n, k));
                if k <= n {
                    assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
                }
            }
        }
    }

    #[test]
    fn binomial_at_one_is_classical() {
        assert_eq!(
            q_binomial(10, 4).eval(&GaussRat::one()).unwrap(),
            GaussRat::from_int(210)
        );
    }

    #[test]
    fn reciprocal_examples() {
        let r = q_reciprocal_checks(3, 1, &GaussRat::from_int(2)).unwrap();
        assert_eq!(r.integer, (GaussRat::ratio(7, 4), GaussRat::ratio(7, 4)));
        assert!(r.holds());
        let r = q_reciprocal_checks(1, 1, &GaussRat::from_int(5)).unwrap();
        assert_eq!(r.integer, (GaussRat::one(), GaussRat::one()));
        let r = q_reciprocal_checks(4, 2, &GaussRat::from_int(3)).unwrap();
        assert_eq!(
            &r.binomial.1 * &GaussRat::from_int(81),
            q_binomial(4, 2).eval(&GaussRat::from_int(3)).unwrap()
        );
        assert!(r.holds());
        assert!(!r.printed_factorial_holds());
        assert!(matches!(
            q_reciprocal_checks(2, 1, &GaussRat::zero()),
            Err(QheisError::QZero)
        ));
    }

    #[test]
    fn subset_sums() {
        let r = subset_sum_binomial_check(2, 1);
        assert_eq!(r.shifted_sum, ints(&[1, 1]));
        assert!(r.holds());
        assert!(!r.printed_form_holds());
        assert_eq!(
            subset_sum_binomial_check(5, 5).shifted_sum,
            LaurentPoly::one(Param::Q)
        );
        assert!(subset_sum_binomial_check(4, 2).holds());
    }
}
