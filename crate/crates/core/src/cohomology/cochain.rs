use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{differential_matrix, CochainSpace, CohomologyError, Representation};
use crate::exactnum::GaussRat;
use crate::linalg::{self, SparseVec};
use crate::FORMAT;

/// An alternating `k`-linear map `g^k -> V`, stored on increasing tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    degree: usize,
    module_dim: usize,
    coords: BTreeMap<Vec<usize>, SparseVec>,
}

/// Sorts `t` in place and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(t: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

impl Cochain {
    pub fn zero(n: usize, degree: usize, module_dim: usize) -> Self {
        Cochain {
            n,
            degree,
            module_dim,
            coords: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Nonzero values on increasing tuples.
    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.coords.iter()
    }

    /// Sets the value on a tuple of distinct zero-based indices in any order.
    pub fn set(&mut self, tuple: &[usize], value: SparseVec) -> Result<(), CohomologyError> {
        if tuple.len() != self.degree
            || tuple.iter().any(|&i| i >= self.n)
            || value.keys().any(|&k| k >= self.module_dim)
        {
            return Err(CohomologyError::SourceMismatch);
        }
        let mut t = tuple.to_vec();
        let odd = sort_with_sign(&mut t).ok_or(CohomologyError::SourceMismatch)?;
        let value = if odd {
            linalg::scaled(&value, &GaussRat::from_int(-1))
        } else {
            value
        };
        if value.is_empty() {
            self.coords.remove(&t);
        } else {
            self.coords.insert(t, value);
        }
        Ok(())
    }

    /// Builder form of [`Cochain::set`].
    pub fn with(mut self, tuple: &[usize], value: SparseVec) -> Result<Self, CohomologyError> {
        self.set(tuple, value)?;
        Ok(self)
    }

    /// Value on basis vectors, in any order, honouring alternation.
    pub fn eval_basis(&self, tuple: &[usize]) -> SparseVec {
        let mut t = tuple.to_vec();
        match sort_with_sign(&mut t) {
            None => SparseVec::new(),
            Some(odd) => {
                let v = self.coords.get(&t).cloned().unwrap_or_default();
                if odd {
                    linalg::scaled(&v, &GaussRat::from_int(-1))
                } else {
                    v
                }
            }
        }
    }

    pub fn space(&self) -> CochainSpace {
        CochainSpace::new(self.n, self.degree, self.module_dim)
    }

    pub fn to_vector(&self) -> SparseVec {
        let space = self.space();
        let mut out = SparseVec::new();
        for (t, v) in &self.coords {
            let ti = space.tuple_index(t).expect("stored tuples are increasing");
            for (&a, x) in v {
                out.insert(space.coord(ti, a), x.clone());
            }
        }
        out
    }

    pub fn from_vector(space: &CochainSpace, v: &SparseVec) -> Self {
        let m = space.module_dim();
        let mut coords: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
        for (&c, x) in v {
            coords
                .entry(space.tuples()[c / m].clone())
                .or_default()
                .insert(c % m, x.clone());
        }
        Cochain {
            n: space.algebra_dim(),
            degree: space.degree(),
            module_dim: m,
            coords,
        }
    }

    /// `dc` with respect to `rep`.
    pub fn differential(&self, rep: &Representation) -> Result<Cochain, CohomologyError> {
        if rep.algebra().dim() != self.n || rep.module_dim() != self.module_dim {
            return Err(CohomologyError::SourceMismatch);
        }
        if self.degree >= self.n {
            return Ok(Cochain::zero(self.n, self.degree + 1, self.module_dim));
        }
        let d = differential_matrix(rep, self.degree);
        let out = d.apply(&self.to_vector());
        Ok(Cochain::from_vector(
            &CochainSpace::new(self.n, self.degree + 1, self.module_dim),
            &out,
        ))
    }

    pub fn to_doc(&self) -> CochainDoc {
        CochainDoc {
            format: Some(FORMAT.to_string()),
            degree: self.degree,
            module_dim: self.module_dim,
            coords: self
                .coords
                .iter()
                .map(|(t, v)| {
                    let key = t
                        .iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    (key, linalg::to_dense(v, self.module_dim))
                })
                .collect(),
        }
    }

    /// Reads a document for an algebra of dimension `n`.
    pub fn from_doc(doc: &CochainDoc, n: usize) -> Result<Self, CohomologyError> {
        let bad = |msg: String| CohomologyError::Document(msg);
        let mut c = Cochain::zero(n, doc.degree, doc.module_dim);
        for (key, vals) in &doc.coords {
            let tuple: Vec<usize> = if key.trim().is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| match s.trim().parse::<usize>() {
                        Ok(i) if i >= 1 && i <= n => Ok(i - 1),
                        _ => Err(bad(format!("bad index '{s}' in key '{key}'"))),
                    })
                    .collect::<Result<_, _>>()?
            };
            if vals.len() != doc.module_dim {
                return Err(bad(format!(
                    "value for '{key}' has length {}, expected {}",
                    vals.len(),
                    doc.module_dim
                )));
            }
            let mut acc = c.eval_basis(&tuple);
            linalg::axpy(&mut acc, &GaussRat::one(), &linalg::from_dense(vals));
            c.set(&tuple, acc)
                .map_err(|_| bad(format!("invalid tuple '{key}'")))?;
        }
        Ok(c)
    }

    pub fn from_json_str(s: &str, n: usize) -> Result<Self, CohomologyError> {
        let doc: CochainDoc =
            serde_json::from_str(s).map_err(|e| CohomologyError::Document(e.to_string()))?;
        Self::from_doc(&doc, n)
    }
}

/// Wire form; tuple keys are comma-separated one-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub degree: usize,
    pub module_dim: usize,
    #[serde(default)]
    pub coords: BTreeMap<String, Vec<GaussRat>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;

    #[test]
    fn alternation_is_structural() {
        let c = Cochain::zero(3, 2, 1).with(&[2, 0], unit(0)).unwrap();
        assert_eq!(
            c.eval_basis(&[0, 2]),
            linalg::scaled(&unit(0), &GaussRat::from_int(-1))
        );
        assert_eq!(c.eval_basis(&[2, 0]), unit(0));
        assert!(c.eval_basis(&[1, 1]).is_empty());
    }

    #[test]
    fn doc_round_trip() {
        let c = Cochain::zero(4, 2, 2)
            .with(&[0, 2], unit(1))
            .unwrap()
            .with(&[1, 3], unit(0))
            .unwrap();
        let text = serde_json::to_string(&c.to_doc()).unwrap();
        assert!(text.contains("\"1,3\""));
        assert_eq!(Cochain::from_json_str(&text, 4).unwrap(), c);
    }
}
