use nalgebra::DMatrix;
use serde::Serialize;

use super::FockError;

/// `{n}_q` in floating point.
pub fn q_int_f64(n: usize, q: f64) -> f64 {
    (0..n).map(|l| q.powi(l as i32)).sum()
}

/// Orthonormal-basis pair: `C e_{n+1} = β_n e_n` with `β_n = sqrt({n+1}_q)`.
pub fn orthonormal_rep_float(q: f64, n: usize) -> Result<(DMatrix<f64>, DMatrix<f64>), FockError> {
    if n < 2 {
        return Err(FockError::SizeTooSmall(n));
    }
    let mut c = DMatrix::zeros(n, n);
    for k in 0..n - 1 {
        let beta_sq = q_int_f64(k + 1, q);
        if beta_sq < 0.0 {
            return Err(FockError::NegativeWeight { index: k });
        }
        c[(k, k + 1)] = beta_sq.sqrt();
    }
    let c_dag = c.transpose();
    Ok((c, c_dag))
}

/// Nonzero entries as `(row, col, value)`, row-major.
pub fn float_triplets(m: &DMatrix<f64>) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != 0.0 {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FloatResidual {
    pub size: usize,
    pub q: f64,
    /// Largest entry of `CC† - qC†C - I` away from the corner.
    pub off_corner: f64,
    pub corner: f64,
    pub tolerance: f64,
}

impl FloatResidual {
    pub fn holds(&self) -> bool {
        self.off_corner < self.tolerance
    }
}

pub fn float_residual(q: f64, n: usize) -> Result<FloatResidual, FockError> {
    let (c, c_dag) = orthonormal_rep_float(q, n)?;
    let d = &c * &c_dag - (&c_dag * &c) * q - DMatrix::identity(n, n);
    let mut off_corner: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if (i, j) != (n - 1, n - 1) {
                off_corner = off_corner.max(d[(i, j)].abs());
            }
        }
    }
    Ok(FloatResidual {
        size: n,
        q,
        off_corner,
        corner: d[(n - 1, n - 1)],
        tolerance: 1e-12 * n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superdiagonals() {
        let (c, _) = orthonormal_rep_float(1.0, 5).unwrap();
        let sd: Vec<f64> = (0..4).map(|k| c[(k, k + 1)]).collect();
        let expect = [1.0, 2f64.sqrt(), 3f64.sqrt(), 2.0];
        assert!(sd.iter().zip(expect).all(|(a, b)| (a - b).abs() < 1e-15));
        let (c, _) = orthonormal_rep_float(0.0, 6).unwrap();
        assert!((0..5).all(|k| c[(k, k + 1)] == 1.0));
        assert!(matches!(
            orthonormal_rep_float(-2.0, 4),
            Err(FockError::NegativeWeight { index: 1 })
        ));
    }

    #[test]
    fn residuals() {
        for q in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let r = float_residual(q, 64).unwrap();
            assert!(r.off_corner < 1e-10, "q={q}: {}", r.off_corner);
            assert!(r.holds());
            assert!((r.corner + q_int_f64(64, q)).abs() < 1e-9);
        }
    }
}
