use serde::Serialize;

use super::FockError;
use crate::exactnum::GaussRat;
use crate::linalg::SparseMatrix;
use crate::qheis::{q_integer, QExpr};

/// `{m}_{q0}` as an exact number.
pub fn q_int_at(m: usize, q0: &GaussRat) -> GaussRat {
    q_integer(m)
        .eval(q0)
        .expect("q-integers have no negative powers")
}

/// Weighted shifts on `C^N`: `B e_m = e_{m+1}`, `A e_m = {m} e_{m-1}`.
pub fn monomial_rep(q0: &GaussRat, n: usize) -> Result<(SparseMatrix, SparseMatrix), FockError> {
    if n < 2 {
        return Err(FockError::SizeTooSmall(n));
    }
    let a = SparseMatrix::from_triplets(n, n, (1..n).map(|m| (m - 1, m, q_int_at(m, q0))))
        .expect("indices in range");
    let b = SparseMatrix::from_triplets(n, n, (1..n).map(|m| (m, m - 1, GaussRat::one())))
        .expect("indices in range");
    Ok((a, b))
}

/// `AB - q0 BA - I`.
pub fn qccr_defect(a: &SparseMatrix, b: &SparseMatrix, q0: &GaussRat) -> SparseMatrix {
    let n = a.nrows();
    &(&(a * b) - &(b * a).scale(q0)) - &SparseMatrix::identity(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub size: usize,
    pub q0: GaussRat,
    pub interior_zero: bool,
    pub corner: GaussRat,
    pub expected_corner: GaussRat,
}

impl DefectReport {
    pub fn holds(&self) -> bool {
        self.interior_zero && self.corner == self.expected_corner
    }
}

/// Checks that the truncated defect vanishes except at the corner, which is `-{N}`.
pub fn check_qccr(q0: &GaussRat, n: usize) -> Result<DefectReport, FockError> {
    let (a, b) = monomial_rep(q0, n)?;
    let d = qccr_defect(&a, &b, q0);
    let interior_zero = d.triplets().all(|(i, j, _)| i == n - 1 && j == n - 1);
    Ok(DefectReport {
        size: n,
        q0: q0.clone(),
        interior_zero,
        corner: d.get(n - 1, n - 1),
        expected_corner: -q_int_at(n, q0),
    })
}

/// Diagonal of `BA`, which must be diagonal.
pub fn number_operator_spectrum(
    a: &SparseMatrix,
    b: &SparseMatrix,
) -> Result<Vec<GaussRat>, FockError> {
    let nop = b * a;
    if !nop.is_diagonal() {
        return Err(FockError::NotDiagonal);
    }
    Ok(nop.diag())
}

/// `(1 - q0^m) / (1 - q0)`, or `m` at `q0 = 1`.
pub fn closed_form_spectrum(q0: &GaussRat, n: usize) -> Vec<GaussRat> {
    let one = GaussRat::one();
    (0..n)
        .map(|m| {
            if q0.is_one() {
                GaussRat::from_int(m as i64)
            } else {
                let num = &one - &q0.pow(m as i64).expect("nonnegative power");
                num.checked_div(&(&one - q0)).expect("q0 != 1")
            }
        })
        .collect()
}

/// `W^{-1} X^H W` with `W = diag({0}!, {1}!, ...)`; requires real `q0`.
pub fn weighted_adjoint(x: &SparseMatrix, q0: &GaussRat) -> Result<SparseMatrix, FockError> {
    if !q0.is_real() {
        return Err(FockError::ComplexParameter);
    }
    let n = x.nrows();
    let mut w = Vec::with_capacity(n);
    let mut acc = GaussRat::one();
    for m in 0..n {
        if m > 0 {
            let f = q_int_at(m, q0);
            if f.is_zero() {
                return Err(FockError::SingularWeight { index: m });
            }
            acc = &acc * &f;
        }
        w.push(acc.clone());
    }
    let mut out = SparseMatrix::zeros(n, n);
    for (i, j, v) in x.conj_transpose().triplets() {
        out.set(i, j, &(v * &w[j]) / &w[i]);
    }
    Ok(out)
}

/// Substitutes matrices for the letters `A` and `B` of `e`.
pub fn expr_matrix(
    e: &QExpr,
    a: &SparseMatrix,
    b: &SparseMatrix,
    q0: &GaussRat,
) -> Result<SparseMatrix, FockError> {
    let n = a.nrows();
    let mut out = SparseMatrix::zeros(n, n);
    for (w, c) in e.terms() {
        let mut m = SparseMatrix::identity(n);
        for &x in w {
            m = &m
                * match x {
                    'A' => a,
                    'B' => b,
                    other => {
                        return Err(FockError::Qheis(crate::qheis::QheisError::ForeignLetter(
                            other,
                        )))
                    }
                };
        }
        out = &out + &m.scale(&c.eval(q0).map_err(crate::qheis::QheisError::from)?);
    }
    Ok(out)
}

/// Compares two operators on rows `0..N-k`.
pub fn equal_below(x: &SparseMatrix, y: &SparseMatrix, k: usize) -> bool {
    let rows = x.nrows().saturating_sub(k);
    (0..rows).all(|i| x.row(i) == y.row(i))
}

/// Checks `lhs = rhs` on the monomial representation, masking the top rows
/// reached by the truncation corner.
pub fn identity_on_interior(
    lhs: &QExpr,
    rhs: &QExpr,
    q0: &GaussRat,
    n: usize,
) -> Result<bool, FockError> {
    let (a, b) = monomial_rep(q0, n)?;
    let degree = lhs
        .terms()
        .keys()
        .chain(rhs.terms().keys())
        .map(Vec::len)
        .max()
        .unwrap_or(0);
    Ok(equal_below(
        &expr_matrix(lhs, &a, &b, q0)?,
        &expr_matrix(rhs, &a, &b, q0)?,
        degree,
    ))
}
