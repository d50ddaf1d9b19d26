use num_traits::Signed;
use serde::Serialize;

use super::monomial::{monomial_rep, q_int_at};
use super::FockError;
use crate::exactnum::GaussRat;
use crate::liealg::LieAlgebra;
use crate::linalg::{SparseMatrix, SparseVec};

/// `A = C - α`, `B = C† - β̄` built on the `q = 1` monomial pair.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftedPair {
    pub size: usize,
    pub alpha: GaussRat,
    pub beta: GaussRat,
    /// In the order `A, B, B†, A†`.
    pub operators: [SparseMatrix; 4],
    /// `commutators[i][j] = [X_i, X_j]`.
    pub commutators: Vec<Vec<SparseMatrix>>,
    pub warning: Option<String>,
}

pub const SHIFTED_LABELS: [&str; 4] = ["A", "B", "B†", "A†"];

pub fn shifted_pair(alpha: &GaussRat, beta: &GaussRat, n: usize) -> Result<ShiftedPair, FockError> {
    let (c, c_dag) = monomial_rep(&GaussRat::one(), n)?;
    let shift = |m: &SparseMatrix, s: &GaussRat| m - &SparseMatrix::scalar(n, s);
    let ops = [
        shift(&c, alpha),
        shift(&c_dag, &beta.conj()),
        shift(&c, beta),
        shift(&c_dag, &alpha.conj()),
    ];
    let commutators = ops
        .iter()
        .map(|x| ops.iter().map(|y| x.commutator(y)).collect())
        .collect();
    let warning = (alpha == beta).then(|| FockError::AlphaEqualsBeta.to_string());
    Ok(ShiftedPair {
        size: n,
        alpha: alpha.clone(),
        beta: beta.clone(),
        operators: ops,
        commutators,
        warning,
    })
}

impl ShiftedPair {
    /// `λ` with `[X_i, X_j] = λ I` on the top-left `(N-1) x (N-1)` block, if it is scalar there.
    pub fn interior_scalar(&self, i: usize, j: usize) -> Option<GaussRat> {
        let k = self.size - 1;
        let block = self.commutators[i][j].block(k);
        let lambda = block.get(0, 0);
        (block == SparseMatrix::scalar(k, &lambda)).then_some(lambda)
    }

    /// Lie algebra spanned by the four operators and `I`, with constants read
    /// from the interior commutators. Labels follow the catalog entry `a_sh`.
    pub fn structure_algebra(&self) -> Result<LieAlgebra, FockError> {
        let mut entries = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let lambda = self
                    .interior_scalar(i, j)
                    .ok_or(FockError::NonScalarCommutator(i, j))?;
                if !lambda.is_zero() {
                    entries.push((i, j, SparseVec::from([(4, lambda)])));
                }
            }
        }
        let labels = ["v1", "v2", "v3", "v4", "v"].map(String::from).to_vec();
        Ok(LieAlgebra::new(5, Some(labels), entries).expect("constants are antisymmetric"))
    }

    /// Dimension of the span of the four operators (as matrices).
    pub fn operator_span_dim(&self) -> usize {
        let flat: Vec<SparseVec> = self
            .operators
            .iter()
            .map(|m| {
                m.triplets()
                    .map(|(i, j, x)| (i * self.size + j, x.clone()))
                    .collect()
            })
            .collect();
        crate::linalg::Subspace::span(self.size * self.size, flat.iter()).dim()
    }
}

/// `φ_n = t_n e_n`, `Ψ_n = e_n / t_n` with operators conjugated by `T = diag(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct BiorthogonalSystem {
    pub size: usize,
    pub q0: GaussRat,
    pub weights: Vec<GaussRat>,
    pub phi: Vec<SparseVec>,
    pub psi: Vec<SparseVec>,
    /// `T A T^{-1}` and `T B T^{-1}` for the monomial pair.
    pub a: SparseMatrix,
    pub b: SparseMatrix,
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`.
pub fn pairing(u: &SparseVec, v: &SparseVec) -> GaussRat {
    u.iter()
        .filter_map(|(i, x)| v.get(i).map(|y| &x.conj() * y))
        .sum()
}

pub fn biorthogonal_pair(
    weights: &[GaussRat],
    q0: &GaussRat,
) -> Result<BiorthogonalSystem, FockError> {
    let n = weights.len();
    for (index, t) in weights.iter().enumerate() {
        if !t.is_real() || !t.re().is_positive() {
            return Err(FockError::NonpositiveWeight { index });
        }
    }
    let (a0, b0) = monomial_rep(q0, n)?;
    let t = SparseMatrix::diagonal(weights.iter().cloned());
    let t_inv = SparseMatrix::diagonal(weights.iter().map(|x| x.inv().expect("positive")));
    let phi = weights
        .iter()
        .enumerate()
        .map(|(i, x)| SparseVec::from([(i, x.clone())]))
        .collect();
    let psi = weights
        .iter()
        .enumerate()
        .map(|(i, x)| SparseVec::from([(i, x.inv().expect("positive"))]))
        .collect();
    Ok(BiorthogonalSystem {
        size: n,
        q0: q0.clone(),
        weights: weights.to_vec(),
        phi,
        psi,
        a: &(&t * &a0) * &t_inv,
        b: &(&t * &b0) * &t_inv,
    })
}

impl BiorthogonalSystem {
    /// `⟨φ_n, Ψ_m⟩`.
    pub fn pairing_matrix(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.size, self.size);
        for (i, u) in self.phi.iter().enumerate() {
            for (j, v) in self.psi.iter().enumerate() {
                m.set(i, j, pairing(u, v));
            }
        }
        m
    }

    pub fn is_biorthonormal(&self) -> bool {
        self.pairing_matrix() == SparseMatrix::identity(self.size)
    }

    /// `⟨Bφ_n, Ψ_{n+1}⟩ ⟨Aφ_{n+1}, Ψ_n⟩` for `n = 0..N-2`, which equals `β_n²`.
    pub fn ladder_products(&self) -> Vec<GaussRat> {
        (0..self.size - 1)
            .map(|k| {
                let up = pairing(&self.b.apply(&self.phi[k]), &self.psi[k + 1]);
                let down = pairing(&self.a.apply(&self.phi[k + 1]), &self.psi[k]);
                &up * &down
            })
            .collect()
    }

    pub fn ladder_holds(&self) -> bool {
        self.ladder_products()
            .iter()
            .enumerate()
            .all(|(k, x)| *x == q_int_at(k + 1, &self.q0))
    }

    /// `A φ_0 = 0` and `B^H Ψ_0 = 0`.
    pub fn vacua_annihilated(&self) -> bool {
        self.a.apply(&self.phi[0]).is_empty()
            && self.b.conj_transpose().apply(&self.psi[0]).is_empty()
    }
}

/// Result of transporting operator/dagger pairs along `V = T U T^{-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct Transport {
    pub v: Vec<SparseMatrix>,
    pub v_dag: Vec<SparseMatrix>,
    /// `D_V(i,j) = T D_U(i,j) T^{-1}` for every pair.
    pub conjugation_holds: bool,
    /// Every `D_U(i,j)` vanishes.
    pub source_exact: bool,
    /// Every `D_V(i,j)` vanishes.
    pub target_exact: bool,
}

/// `X_i Y_j - q0 Y_j X_i - δ_ij I`.
pub fn pair_defect(x: &SparseMatrix, y: &SparseMatrix, q0: &GaussRat, delta: bool) -> SparseMatrix {
    let d = &(x * y) - &(y * x).scale(q0);
    if delta {
        &d - &SparseMatrix::identity(x.nrows())
    } else {
        d
    }
}

/// `pairs[i] = (U_i, U_i†)`.
pub fn similarity_transport(
    pairs: &[(SparseMatrix, SparseMatrix)],
    t: &SparseMatrix,
    q0: &GaussRat,
) -> Result<Transport, FockError> {
    let n = t.nrows();
    if pairs
        .iter()
        .any(|(u, d)| u.nrows() != n || u.ncols() != n || d.nrows() != n || d.ncols() != n)
    {
        return Err(FockError::DimensionMismatch);
    }
    let t_inv = t.inverse().map_err(|_| FockError::SingularT)?;
    let conj = |m: &SparseMatrix| &(t * m) * &t_inv;
    let v: Vec<SparseMatrix> = pairs.iter().map(|(u, _)| conj(u)).collect();
    let v_dag: Vec<SparseMatrix> = pairs.iter().map(|(_, d)| conj(d)).collect();
    let (mut conjugation_holds, mut source_exact, mut target_exact) = (true, true, true);
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let du = pair_defect(&pairs[i].0, &pairs[j].1, q0, i == j);
            let dv = pair_defect(&v[i], &v_dag[j], q0, i == j);
            conjugation_holds &= dv == conj(&du);
            source_exact &= du.is_zero();
            target_exact &= dv.is_zero();
        }
    }
    Ok(Transport {
        v,
        v_dag,
        conjugation_holds,
        source_exact,
        target_exact,
    })
}

/// `C = [[0,1],[0,0]]` and its transpose, satisfying `CC† + C†C = I`.
pub fn car_pair() -> (SparseMatrix, SparseMatrix) {
    let c = SparseMatrix::from_triplets(2, 2, [(0, 1, GaussRat::one())]).expect("in range");
    let d = c.transpose();
    (c, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn r(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    #[test]
    fn shifted_pair_matches_a_sh() {
        let p = shifted_pair(&GaussRat::one(), &GaussRat::i(), 6).unwrap();
        assert!(p.warning.is_none());
        assert_eq!(p.interior_scalar(0, 1), Some(GaussRat::one()));
        assert!(p.commutators[0][2].is_zero());
        assert!(p.commutators[1][3].is_zero());
        assert!(p
            .structure_algebra()
            .unwrap()
            .same_constants(&catalog::a_sh()));
        assert_eq!(p.operator_span_dim(), 3);
        for n in [3, 5, 9] {
            let p = shifted_pair(&r(2, 3), &GaussRat::complex((-1, 1), (4, 1)), n).unwrap();
            assert!(p.commutators[0][2].is_zero());
            assert!(p
                .structure_algebra()
                .unwrap()
                .same_constants(&catalog::a_sh()));
        }
        let same = shifted_pair(&GaussRat::one(), &GaussRat::one(), 4).unwrap();
        assert!(same.warning.is_some());
        assert_eq!(same.operators[1], same.operators[3]);
    }

    #[test]
    fn biorthogonal_examples() {
        let unit = biorthogonal_pair(&vec![GaussRat::one(); 5], &GaussRat::one()).unwrap();
        assert_eq!(unit.phi, unit.psi);
        assert!(unit.is_biorthonormal());
        let s = biorthogonal_pair(&[1, 2, 3, 4].map(GaussRat::from_int), &GaussRat::one()).unwrap();
        assert_eq!(s.pairing_matrix(), SparseMatrix::identity(4));
        assert!(s.ladder_holds());
        assert!(s.vacua_annihilated());
        let s = biorthogonal_pair(&[r(1, 1), r(1, 2), r(5, 1)], &r(1, 2)).unwrap();
        assert_eq!(s.ladder_products()[0], GaussRat::one());
        assert_eq!(s.ladder_products()[1], r(3, 2));
        assert!(s.is_biorthonormal() && s.ladder_holds());
        assert!(matches!(
            biorthogonal_pair(&[r(1, 1), r(0, 1)], &GaussRat::one()),
            Err(FockError::NonpositiveWeight { index: 1 })
        ));
        assert!(matches!(
            biorthogonal_pair(&[r(1, 1), r(-2, 1)], &GaussRat::one()),
            Err(FockError::NonpositiveWeight { index: 1 })
        ));
    }

    #[test]
    fn car_transport() {
        let (c, d) = car_pair();
        let q0 = r(-1, 1);
        assert!(pair_defect(&c, &d, &q0, true).is_zero());
        let t = SparseMatrix::from_dense(&[vec![r(2, 1), r(1, 3)], vec![r(-1, 1), r(5, 2)]]);
        let tr = similarity_transport(&[(c.clone(), d.clone())], &t, &q0).unwrap();
        assert!(tr.conjugation_holds && tr.source_exact && tr.target_exact);
        let id = similarity_transport(&[(c.clone(), d)], &SparseMatrix::identity(2), &q0).unwrap();
        assert_eq!(id.v[0], c);
        let singular = SparseMatrix::from_dense(&[vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]]);
        assert!(matches!(
            similarity_transport(&[car_pair()], &singular, &q0),
            Err(FockError::SingularT)
        ));
    }

    #[test]
    fn truncated_transport_moves_corner() {
        let q0 = r(1, 3);
        let n = 5;
        let (a, b) = monomial_rep(&q0, n).unwrap();
        let t = SparseMatrix::diagonal([1, 2, 3, 5, 7].map(GaussRat::from_int));
        let tr = similarity_transport(&[(a, b)], &t, &q0).unwrap();
        assert!(tr.conjugation_holds);
        assert!(!tr.source_exact && !tr.target_exact);
        let dv = pair_defect(&tr.v[0], &tr.v_dag[0], &q0, true);
        assert_eq!(dv.get(n - 1, n - 1), -q_int_at(n, &q0));
    }
}
