use serde::Serialize;

use super::FockError;
use crate::exactnum::GaussRat;
use crate::linalg::SparseMatrix;

pub const DEFAULT_SIZE_CAP: usize = 200_000;

/// Cap on `dim²` read from `LIEQ_SIZE_CAP`, falling back to the default.
pub fn size_cap() -> usize {
    std::env::var("LIEQ_SIZE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

/// Creation operators `l_i(w) = i·w` on words of length at most `L`.
#[derive(Clone, Debug, Serialize)]
pub struct CuntzFock {
    pub letters: usize,
    pub depth: usize,
    /// Basis words ordered by length, then lexicographically.
    pub words: Vec<Vec<usize>>,
    pub creation: Vec<SparseMatrix>,
}

fn fock_dim(d: usize, depth: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut level: usize = 1;
    for _ in 0..=depth {
        total = total.checked_add(level)?;
        level = level.checked_mul(d)?;
    }
    Some(total)
}

pub fn cuntz_toeplitz(d: usize, depth: usize, cap: usize) -> Result<CuntzFock, FockError> {
    if d == 0 {
        return Err(FockError::SizeTooSmall(0));
    }
    let dim = fock_dim(d, depth).ok_or(FockError::SizeCap {
        dim: usize::MAX,
        cap,
    })?;
    if dim.checked_mul(dim).is_none_or(|sq| sq > cap) {
        return Err(FockError::SizeCap { dim, cap });
    }
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let next: Vec<Vec<usize>> = frontier
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..d).map(move |i| {
                    let mut x = w.clone();
                    x.push(i);
                    x
                })
            })
            .collect();
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: std::collections::HashMap<&Vec<usize>, usize> =
        words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let creation = (0..d)
        .map(|i| {
            let entries = words
                .iter()
                .enumerate()
                .filter(|(_, w)| w.len() < depth)
                .map(|(k, w)| {
                    let mut x = vec![i];
                    x.extend_from_slice(w);
                    (index[&x], k, GaussRat::one())
                });
            SparseMatrix::from_triplets(dim, dim, entries).expect("indices in range")
        })
        .collect();
    Ok(CuntzFock {
        letters: d,
        depth,
        words,
        creation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CuntzReport {
    pub letters: usize,
    pub depth: usize,
    pub dim: usize,
    pub pairs_checked: usize,
    /// `l_i† l_j = δ_ij` on every word of length `< L`.
    pub relations_hold: bool,
    /// Defect columns are exactly the top-degree words.
    pub defect_on_top_degree: bool,
}

impl CuntzReport {
    pub fn holds(&self) -> bool {
        self.relations_hold && self.defect_on_top_degree
    }
}

impl CuntzFock {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn check(&self) -> CuntzReport {
        let id = SparseMatrix::identity(self.dim());
        let mut relations_hold = true;
        let mut defect_on_top_degree = true;
        for i in 0..self.letters {
            for j in 0..self.letters {
                let mut defect = &self.creation[i].conj_transpose() * &self.creation[j];
                if i == j {
                    defect = &defect - &id;
                }
                let cols: std::collections::BTreeSet<usize> =
                    defect.triplets().map(|(_, c, _)| c).collect();
                relations_hold &= cols.iter().all(|&c| self.words[c].len() == self.depth);
                if i == j {
                    // every top-degree word is killed by l_i, so δ_ii leaves -1 there
                    defect_on_top_degree &= (0..self.dim())
                        .filter(|&c| self.words[c].len() == self.depth)
                        .all(|c| cols.contains(&c));
                }
            }
        }
        CuntzReport {
            letters: self.letters,
            depth: self.depth,
            dim: self.dim(),
            pairs_checked: self.letters * self.letters,
            relations_hold,
            defect_on_top_degree,
        }
    }
}
