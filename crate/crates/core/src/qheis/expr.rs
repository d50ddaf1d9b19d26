use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::{GaussRat, LaurentPoly, Param};

pub type Word = Vec<char>;

/// A finite combination of words with coefficients in `Q(i)[q, 1/q]`.
///
/// Words are over an arbitrary alphabet so the same type serves the free
/// algebra; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QExpr {
    terms: BTreeMap<Word, LaurentPoly>,
}

pub(crate) fn add_into(map: &mut BTreeMap<Word, LaurentPoly>, w: Word, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(e) => {
            *e = &*e + c;
            if e.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c.clone());
        }
    }
}

impl QExpr {
    pub fn zero() -> Self {
        QExpr::default()
    }

    pub fn unit() -> Self {
        QExpr::scalar(LaurentPoly::one(Param::Q))
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        QExpr::term(Vec::new(), c)
    }

    pub fn constant(c: GaussRat) -> Self {
        QExpr::scalar(LaurentPoly::constant(Param::Q, c))
    }

    /// The indeterminate `q` as a scalar.
    pub fn q() -> Self {
        QExpr::scalar(LaurentPoly::var(Param::Q))
    }

    pub fn letter(c: char) -> Self {
        QExpr::word(&c.to_string())
    }

    /// A single word given as a string such as `"ABB"`.
    pub fn word(s: &str) -> Self {
        QExpr::term(s.chars().collect(), LaurentPoly::one(Param::Q))
    }

    pub fn term(w: Word, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, &c);
        QExpr { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, LaurentPoly)>) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            add_into(&mut terms, w, &c);
        }
        QExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, LaurentPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every letter used in some word.
    pub fn letters(&self) -> std::collections::BTreeSet<char> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        QExpr::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn scale_const(&self, c: &GaussRat) -> Self {
        QExpr::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x.scale(c))))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QExpr::unit(), |acc, _| &acc * self)
    }

    /// `xy - c yx`.
    pub fn q_mutator(x: &QExpr, y: &QExpr, c: &LaurentPoly) -> Self {
        &(x * y) - &(y * x).scale(c)
    }

    /// `xy - yx`.
    pub fn commutator(x: &QExpr, y: &QExpr) -> Self {
        &(x * y) - &(y * x)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&LaurentPoly) -> LaurentPoly) -> Self {
        QExpr::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

impl Add<&QExpr> for &QExpr {
    type Output = QExpr;
    fn add(self, rhs: &QExpr) -> QExpr {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            add_into(&mut terms, w.clone(), c);
        }
        QExpr { terms }
    }
}

impl Sub<&QExpr> for &QExpr {
    type Output = QExpr;
    fn sub(self, rhs: &QExpr) -> QExpr {
        self + &(-rhs)
    }
}

impl Neg for &QExpr {
    type Output = QExpr;
    fn neg(self) -> QExpr {
        QExpr {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul<&QExpr> for &QExpr {
    type Output = QExpr;
    fn mul(self, rhs: &QExpr) -> QExpr {
        let mut terms = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                add_into(&mut terms, w, &(c1 * c2));
            }
        }
        QExpr { terms }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QExpr> for QExpr {
            type Output = QExpr;
            fn $m(self, rhs: QExpr) -> QExpr {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for QExpr {
    type Output = QExpr;
    fn neg(self) -> QExpr {
        -&self
    }
}

/// `B^3` style rendering of a word with runs collapsed.
pub(crate) fn fmt_word(w: &[char]) -> String {
    if w.is_empty() {
        return "I".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        parts.push(if j - i == 1 {
            w[i].to_string()
        } else {
            format!("{}^{}", w[i], j - i)
        });
        i = j;
    }
    parts.join("*")
}

pub(crate) fn fmt_term(c: &LaurentPoly, word: &str) -> String {
    let one = LaurentPoly::one(c.param());
    if word == "I" {
        return c.to_string();
    }
    if *c == one {
        word.to_string()
    } else if *c == -&one {
        format!("-{word}")
    } else if c.terms().count() == 1 {
        format!("{c}*{word}")
    } else {
        format!("({c})*{word}")
    }
}

impl fmt::Display for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| fmt_term(c, &fmt_word(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QExpr({self})")
    }
}
