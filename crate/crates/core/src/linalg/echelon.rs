use super::{axpy, scaled, SparseVec};
use crate::exactnum::GaussRat;

/// Incrementally maintained reduced row-echelon basis.
///
/// Every stored row has leading entry 1 at its pivot and zeros at all other
/// pivots, so reducing a vector costs one pass over its support.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_parts(self) -> (Vec<SparseVec>, Vec<usize>) {
        (self.rows, self.pivots)
    }

    fn row_of(&self, pivot: usize) -> Option<usize> {
        self.pivots.binary_search(&pivot).ok()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (k, &p) in self.pivots.iter().enumerate() {
            if let Some(c) = v.get(&p).cloned() {
                axpy(&mut v, &-c, &self.rows[k]);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let r = scaled(&r, &lead.inv().expect("nonzero leading entry"));
        for row in &mut self.rows {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coefficients of `v` in terms of the stored rows, if `v` is in the span.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<GaussRat>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .map(|p| v.get(p).cloned().unwrap_or_default())
                .collect(),
        )
    }

    /// Basis of `{x : row . x = 0 for all rows}` in an ambient space of size `n`.
    pub fn kernel_basis(&self, n: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        let mut next_pivot = self.pivots.iter().peekable();
        for f in 0..n {
            if next_pivot.peek() == Some(&&f) {
                next_pivot.next();
                continue;
            }
            let mut x = SparseVec::from([(f, GaussRat::one())]);
            for (k, &p) in self.pivots.iter().enumerate() {
                if let Some(c) = self.rows[k].get(&f) {
                    x.insert(p, -c);
                }
            }
            out.push(x);
        }
        out
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of(col).is_some()
    }
}
