//! Expression grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*      juxtaposition multiplies
//! factor := '-' factor | atom ['^' ['-'] int]
//! atom   := 'A' | 'B' | 'I' | 'q' | 'i' | int | '(' expr ')'
//! ```
//!
//! Division and negative powers are allowed only for scalar monomials.

use num_bigint::BigInt;

use super::expr::QExpr;
use super::QheisError;
use crate::exactnum::{GaussRat, LaurentPoly, Param};

pub fn parse_expr(s: &str) -> Result<QExpr, QheisError> {
    let mut p = Parser {
        chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> QheisError {
        QheisError::Parse(format!("{msg} at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<QExpr, QheisError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || "ABIqi(".contains(c))
    }

    fn term(&mut self) -> Result<QExpr, QheisError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                acc = &acc * &self.invert(&d)?;
            } else if self.starts_atom() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<QExpr, QheisError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let k = self.integer()?;
        let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
        if neg {
            Ok(self.invert(&base)?.pow(k))
        } else {
            Ok(base.pow(k))
        }
    }

    fn invert(&self, e: &QExpr) -> Result<QExpr, QheisError> {
        let mut terms = e.terms().iter();
        let scalar_monomial = match (terms.next(), terms.next()) {
            (Some((w, c)), None) if w.is_empty() && c.terms().count() == 1 => c.terms().next(),
            _ => None,
        };
        let (exp, c) =
            scalar_monomial.ok_or_else(|| self.error("only scalar monomials can be inverted"))?;
        Ok(QExpr::scalar(LaurentPoly::monomial(
            Param::Q,
            c.inv()?,
            -exp,
        )))
    }

    fn integer(&mut self) -> Result<BigInt, QheisError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("bad integer"))
    }

    fn atom(&mut self) -> Result<QExpr, QheisError> {
        match self.peek() {
            Some('A') | Some('B') => {
                let c = self.chars[self.pos];
                self.pos += 1;
                Ok(QExpr::letter(c))
            }
            Some('I') => {
                self.pos += 1;
                Ok(QExpr::unit())
            }
            Some('q') => {
                self.pos += 1;
                Ok(QExpr::q())
            }
            Some('i') => {
                self.pos += 1;
                Ok(QExpr::constant(GaussRat::i()))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QExpr::constant(GaussRat::from_rational(n.into())))
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
