use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{ExactError, GaussRat};

/// The formal parameter a Laurent polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    /// Deformation parameter of a bracket family.
    T,
    /// Deformation parameter of the q-commutation relation.
    Q,
}

impl Param {
    pub fn symbol(self) -> char {
        match self {
            Param::T => 't',
            Param::Q => 'q',
        }
    }
}

/// A Laurent polynomial over `Q(i)` in one formal parameter.
///
/// Zero coefficients are never stored, so the empty map is the zero
/// polynomial and equality is coefficient-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Param,
    coeffs: BTreeMap<i64, GaussRat>,
}

impl LaurentPoly {
    pub fn zero(var: Param) -> Self {
        LaurentPoly {
            var,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: Param) -> Self {
        Self::constant(var, GaussRat::one())
    }

    pub fn constant(var: Param, c: GaussRat) -> Self {
        Self::monomial(var, c, 0)
    }

    /// `c * var^exp`.
    pub fn monomial(var: Param, c: GaussRat, exp: i64) -> Self {
        let mut p = Self::zero(var);
        if !c.is_zero() {
            p.coeffs.insert(exp, c);
        }
        p
    }

    /// The parameter itself, `var^1`.
    pub fn var(var: Param) -> Self {
        Self::monomial(var, GaussRat::one(), 1)
    }

    pub fn from_coeffs(var: Param, coeffs: impl IntoIterator<Item = (i64, GaussRat)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in coeffs {
            p.add_term(e, &c);
        }
        p
    }

    /// Polynomial with integer coefficients `cs[k] * var^k`.
    pub fn from_ints(var: Param, cs: &[i64]) -> Self {
        Self::from_coeffs(
            var,
            cs.iter()
                .enumerate()
                .map(|(k, &c)| (k as i64, GaussRat::from_int(c))),
        )
    }

    pub fn param(&self) -> Param {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    pub fn coeff(&self, exp: i64) -> GaussRat {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRat)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, x)| (e + k, x.clone()))
                .collect(),
        }
    }

    /// Substitutes `var -> 1/var`.
    pub fn reciprocal_param(&self) -> Self {
        LaurentPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&e, x)| (-e, x.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &GaussRat) -> Result<GaussRat, ExactError> {
        if x.is_zero() {
            if self.min_degree().is_some_and(|e| e < 0) {
                return Err(ExactError::EvalAtZeroWithNegativeDegree);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = GaussRat::zero();
        for (&e, c) in &self.coeffs {
            acc += &(c * &x.pow(e)?);
        }
        Ok(acc)
    }

    /// Exact division; fails unless `divisor` divides `self` with zero
    /// remainder in the Laurent ring.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, ExactError> {
        let (Some(dlo), Some(dhi)) = (divisor.min_degree(), divisor.max_degree()) else {
            return Err(ExactError::DivisionByZero);
        };
        let lead_inv = divisor.coeff(dhi).inv()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.var);
        while let Some(rhi) = rem.max_degree() {
            if rhi - (dhi - dlo) < rem.min_degree().unwrap_or(rhi) {
                return Err(ExactError::NonDivisible);
            }
            let e = rhi - dhi;
            let c = &rem.coeff(rhi) * &lead_inv;
            for (&de, dc) in &divisor.coeffs {
                rem.add_term(de + e, &-(dc * &c));
            }
            quot.add_term(e, &c);
        }
        Ok(quot)
    }

    fn pick_var(&self, other: &LaurentPoly) -> Param {
        if self.var == other.var || other.is_constant() {
            self.var
        } else if self.is_constant() {
            other.var
        } else {
            panic!("mixing Laurent polynomials in different parameters");
        }
    }

    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect()
    }

    pub fn from_json_map(var: Param, map: &BTreeMap<String, String>) -> Result<Self, ExactError> {
        let mut p = Self::zero(var);
        for (e, c) in map {
            let e: i64 = e
                .parse()
                .map_err(|_| ExactError::Parse(format!("bad exponent '{e}'")))?;
            p.add_term(e, &c.parse()?);
        }
        Ok(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.var = self.pick_var(rhs);
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.var = self.pick_var(rhs);
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.pick_var(rhs));
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Human-readable form, e.g. `1 + q + 2*q^2`, `-q^-1`, `(1/2+i)*t`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let v = self.var.symbol();
        for (n, (&e, c)) in self.coeffs.iter().enumerate() {
            let txt = c.to_string();
            let complex = !c.is_real() && !num_traits::Zero::is_zero(c.re());
            let negative = txt.starts_with('-') && !complex;
            let mag = if negative { txt[1..].to_string() } else { txt };
            let mag = if complex { format!("({mag})") } else { mag };
            if n == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let unit = mag == "1";
            match e {
                0 => f.write_str(&mag)?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::var(Param::Q)
    }

    #[test]
    fn eval_at_one_counts_terms() {
        let p = LaurentPoly::from_ints(Param::Q, &[1, 1, 1]);
        assert_eq!(p.eval(&GaussRat::one()).unwrap(), GaussRat::from_int(3));
    }

    #[test]
    fn eval_at_half() {
        // 1 + 1/2 + 1/4
        let p = LaurentPoly::from_ints(Param::Q, &[1, 1, 1]);
        assert_eq!(
            p.eval(&GaussRat::ratio(1, 2)).unwrap(),
            GaussRat::ratio(7, 4)
        );
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let a = LaurentPoly::monomial(Param::Q, GaussRat::one(), -1);
        let b = LaurentPoly::monomial(Param::Q, GaussRat::one(), 2);
        assert_eq!(&a * &b, q());
    }

    #[test]
    fn eval_at_zero_with_negative_degree_fails() {
        let a = LaurentPoly::monomial(Param::Q, GaussRat::one(), -1);
        assert_eq!(
            a.eval(&GaussRat::zero()),
            Err(ExactError::EvalAtZeroWithNegativeDegree)
        );
        let b = LaurentPoly::from_ints(Param::Q, &[5, 1]);
        assert_eq!(b.eval(&GaussRat::zero()).unwrap(), GaussRat::from_int(5));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.min_degree(), None);
    }

    #[test]
    fn exact_division() {
        // (1 + q)(1 + q + q^2) / (1 + q) = 1 + q + q^2
        let a = LaurentPoly::from_ints(Param::Q, &[1, 1]);
        let b = LaurentPoly::from_ints(Param::Q, &[1, 1, 1]);
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        assert_eq!(b.div_exact(&a), Err(ExactError::NonDivisible));
        let shifted = (&a * &b).shift(-3);
        assert_eq!(shifted.div_exact(&a).unwrap(), b.shift(-3));
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_coeffs(
            Param::Q,
            [
                (-1, GaussRat::from_int(-1)),
                (0, GaussRat::one()),
                (2, GaussRat::from_int(2)),
            ],
        );
        assert_eq!(p.to_string(), "-q^-1 + 1 + 2*q^2");
        assert_eq!(
            LaurentPoly::monomial(Param::T, "1+i".parse().unwrap(), 1).to_string(),
            "(1+i)*t"
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, proptest::collection::vec(-5i64..5, 0..6)).prop_map(|(lo, cs)| {
            LaurentPoly::from_coeffs(
                Param::Q,
                cs.into_iter()
                    .enumerate()
                    .map(|(k, c)| (lo + k as i64, GaussRat::from_int(c))),
            )
        })
    }

    proptest! {
        // Evaluating at span+1 distinct points determines the polynomial.
        #[test]
        fn interpolation_recovers_coefficients(p in arb_poly()) {
            let (Some(lo), Some(hi)) = (p.min_degree(), p.max_degree()) else { return Ok(()); };
            let n = (hi - lo + 1) as usize;
            let xs: Vec<GaussRat> = (1..=n as i64).map(GaussRat::from_int).collect();
            // Lagrange interpolation of x^{-lo} p(x), a plain polynomial of degree < n.
            let ys: Vec<GaussRat> = xs.iter().map(|x| &p.eval(x).unwrap() * &x.pow(-lo).unwrap()).collect();
            let mut rec = LaurentPoly::zero(Param::Q);
            for (j, xj) in xs.iter().enumerate() {
                let mut basis = LaurentPoly::one(Param::Q);
                for (m, xm) in xs.iter().enumerate() {
                    if m != j {
                        let lin = &q() - &LaurentPoly::constant(Param::Q, xm.clone());
                        basis = &basis * &lin.scale(&(xj - xm).inv().unwrap());
                    }
                }
                rec = &rec + &basis.scale(&ys[j]);
            }
            prop_assert_eq!(rec.shift(lo), p);
        }

        #[test]
        fn multiplication_matches_evaluation(a in arb_poly(), b in arb_poly()) {
            let x = GaussRat::complex((2, 3), (-1, 2));
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), &a.eval(&x).unwrap() * &b.eval(&x).unwrap());
        }
    }
}
