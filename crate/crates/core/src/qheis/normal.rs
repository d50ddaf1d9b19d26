use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::ser::SerializeSeq;
use serde::Serialize;

use super::expr::{add_into, fmt_term, fmt_word, QExpr, Word};
use super::QheisError;
use crate::exactnum::{ExactError, GaussRat, LaurentPoly, Param};

/// `Σ c_{m,n} B^m A^n`, keyed by `(m, n)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NormalForm {
    coeffs: BTreeMap<(usize, usize), LaurentPoly>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn monomial(m: usize, n: usize, c: LaurentPoly) -> Self {
        let mut nf = NormalForm::zero();
        nf.add(m, n, &c);
        nf
    }

    pub fn add(&mut self, m: usize, n: usize, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self
            .coeffs
            .entry((m, n))
            .or_insert_with(|| LaurentPoly::zero(Param::Q));
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&(m, n));
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), LaurentPoly> {
        &self.coeffs
    }

    pub fn get(&self, m: usize, n: usize) -> LaurentPoly {
        self.coeffs
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(Param::Q))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Substitutes `q = q0` into every coefficient.
    pub fn eval(&self, q0: &GaussRat) -> Result<NormalForm, ExactError> {
        let mut out = NormalForm::zero();
        for (&(m, n), c) in &self.coeffs {
            out.add(m, n, &LaurentPoly::constant(Param::Q, c.eval(q0)?));
        }
        Ok(out)
    }

    pub fn has_negative_powers(&self) -> bool {
        self.coeffs
            .values()
            .any(|c| c.min_degree().is_some_and(|d| d < 0))
    }

    pub fn to_expr(&self) -> QExpr {
        QExpr::from_terms(
            self.coeffs
                .iter()
                .map(|(&(m, n), c)| (basis_word(m, n), c.clone())),
        )
    }
}

pub fn basis_word(m: usize, n: usize) -> Word {
    let mut w = vec!['B'; m];
    w.extend(std::iter::repeat_n('A', n));
    w
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&(m, n), c)| fmt_term(c, &fmt_word(&basis_word(m, n))))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({self})")
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    m: usize,
    n: usize,
    coeff: &'a LaurentPoly,
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (&(m, n), coeff) in &self.coeffs {
            seq.serialize_element(&Entry { m, n, coeff })?;
        }
        seq.end()
    }
}

/// Which occurrence of `AB` to rewrite next.
pub trait RewriteStrategy {
    /// `positions` is non-empty and sorted.
    fn pick(&mut self, positions: &[usize]) -> usize;
}

pub struct Leftmost;

impl RewriteStrategy for Leftmost {
    fn pick(&mut self, positions: &[usize]) -> usize {
        positions[0]
    }
}

pub struct Rightmost;

impl RewriteStrategy for Rightmost {
    fn pick(&mut self, positions: &[usize]) -> usize {
        positions[positions.len() - 1]
    }
}

pub struct RandomChoice<R: Rng>(pub R);

impl<R: Rng> RewriteStrategy for RandomChoice<R> {
    fn pick(&mut self, positions: &[usize]) -> usize {
        positions[self.0.gen_range(0..positions.len())]
    }
}

/// The rewriting rule `AB -> c BA + I` with `c` either `q` or a fixed value.
#[derive(Clone, Debug)]
pub struct Rule {
    c: LaurentPoly,
}

impl Rule {
    pub fn symbolic() -> Self {
        Rule {
            c: LaurentPoly::var(Param::Q),
        }
    }

    pub fn at(q0: GaussRat) -> Self {
        Rule {
            c: LaurentPoly::constant(Param::Q, q0),
        }
    }

    pub fn coefficient(&self) -> &LaurentPoly {
        &self.c
    }

    /// Rewrites every word to normal form with the given strategy.
    pub fn normalize_with(
        &self,
        e: &QExpr,
        strategy: &mut dyn RewriteStrategy,
    ) -> Result<NormalForm, QheisError> {
        check_alphabet(e)?;
        let mut work: BTreeMap<(usize, usize, Word), LaurentPoly> = BTreeMap::new();
        let push =
            |work: &mut BTreeMap<(usize, usize, Word), LaurentPoly>, w: Word, c: &LaurentPoly| {
                if c.is_zero() {
                    return;
                }
                let key = (w.len(), inversions(&w), w);
                let e = work
                    .entry(key.clone())
                    .or_insert_with(|| LaurentPoly::zero(Param::Q));
                *e = &*e + c;
                if e.is_zero() {
                    work.remove(&key);
                }
            };
        for (w, c) in e.terms() {
            push(&mut work, w.clone(), c);
        }
        let mut out = NormalForm::zero();
        // Rewrites strictly lower (length, inversions), so popping the
        // largest key merges every contribution before a word is expanded.
        while let Some(((_, inv, w), c)) = work.pop_last() {
            if inv == 0 {
                let m = w.iter().take_while(|&&x| x == 'B').count();
                out.add(m, w.len() - m, &c);
                continue;
            }
            let positions: Vec<usize> = (0..w.len() - 1)
                .filter(|&i| w[i] == 'A' && w[i + 1] == 'B')
                .collect();
            let p = strategy.pick(&positions);
            let mut swapped = w.clone();
            swapped.swap(p, p + 1);
            push(&mut work, swapped, &(&c * &self.c));
            let mut dropped = w;
            dropped.drain(p..p + 2);
            push(&mut work, dropped, &c);
        }
        Ok(out)
    }

    /// Normal form built letter by letter: `NF(w x) = NF(NF(w) x)`.
    pub fn normalize(&self, e: &QExpr) -> Result<NormalForm, QheisError> {
        check_alphabet(e)?;
        let mut out = NormalForm::zero();
        for (w, c) in e.terms() {
            let mut cur = NormalForm::monomial(0, 0, c.clone());
            for &x in w {
                cur = self.append(&cur, x);
            }
            for ((m, n), v) in cur.coeffs {
                out.add(m, n, &v);
            }
        }
        Ok(out)
    }

    fn append(&self, nf: &NormalForm, x: char) -> NormalForm {
        let mut terms = BTreeMap::new();
        for (&(m, n), c) in nf.coeffs() {
            let mut w = basis_word(m, n);
            w.push(x);
            add_into(&mut terms, w, c);
        }
        self.normalize_with(&QExpr::from_terms(terms), &mut Leftmost)
            .expect("alphabet already checked")
    }

    pub fn verify_identity(&self, lhs: &QExpr, rhs: &QExpr) -> Result<bool, QheisError> {
        Ok(self.normalize(lhs)? == self.normalize(rhs)?)
    }
}

fn inversions(w: &[char]) -> usize {
    let mut as_seen = 0;
    let mut inv = 0;
    for &x in w {
        if x == 'A' {
            as_seen += 1;
        } else {
            inv += as_seen;
        }
    }
    inv
}

fn check_alphabet(e: &QExpr) -> Result<(), QheisError> {
    match e.letters().into_iter().find(|&c| c != 'A' && c != 'B') {
        Some(c) => Err(QheisError::ForeignLetter(c)),
        None => Ok(()),
    }
}

/// Normal form at symbolic `q`.
pub fn normal_order(e: &QExpr) -> Result<NormalForm, QheisError> {
    Rule::symbolic().normalize(e)
}

/// Normal form with `q` fixed to `q0` before rewriting.
pub fn normal_order_at(e: &QExpr, q0: &GaussRat) -> Result<NormalForm, QheisError> {
    Rule::at(q0.clone()).normalize(e)
}

pub fn verify_identity(lhs: &QExpr, rhs: &QExpr) -> Result<bool, QheisError> {
    Rule::symbolic().verify_identity(lhs, rhs)
}
