//! Dense LU factorization with partial pivoting, used by the Kronecker-space
//! direct solver and the vec-space reference iteration.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Relative pivot threshold below which a system is declared singular.
pub const PIVOT_RTOL: f64 = 1e-14;

/// Packed LU factors of a square matrix with row-pivot record.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factor `a`; fails when any pivot falls below `PIVOT_RTOL * max|a_ij|`.
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let threshold = PIVOT_RTOL * a.max_abs();
        let mut lu = a.data().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let mut piv_row = k;
            let mut piv_val = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let v = lu[i * n + k].abs();
                if v > piv_val {
                    piv_val = v;
                    piv_row = i;
                }
            }
            if piv_val <= threshold {
                return Err(Error::SingularSystem {
                    pivot: piv_val,
                    threshold,
                });
            }
            if piv_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv_row * n + j);
                }
                perm.swap(k, piv_row);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n, "rhs length mismatch");
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        // forward substitution with unit lower triangle
        for i in 1..n {
            let mut acc = x[i];
            for (l, v) in self.lu[i * n..i * n + i].iter().zip(&x[..i]) {
                acc -= l * v;
            }
            x[i] = acc;
        }
        // back substitution
        for i in (0..n).rev() {
            let mut acc = x[i];
            for (l, v) in self.lu[i * n + i + 1..(i + 1) * n].iter().zip(&x[i + 1..]) {
                acc -= l * v;
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solves_small_system() {
        let a = DenseMatrix::from_rows(2, 2, vec![2.0, 1.0, 5.0, 3.0]).unwrap();
        let f = LuFactors::factor(&a).unwrap();
        let x = f.solve(&[4.0, 11.0]);
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn random_residual_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let n = 12;
            let a = DenseMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    8.0 + rng.gen::<f64>()
                } else {
                    rng.gen::<f64>() - 0.5
                }
            })
            .unwrap();
            let b: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let x = LuFactors::factor(&a).unwrap().solve(&b);
            let ax = a.matvec(&x);
            let err: f64 = ax
                .iter()
                .zip(&b)
                .map(|(p, q)| (p - q) * (p - q))
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-10, "residual {err}");
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = DenseMatrix::from_rows(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        match LuFactors::factor(&a) {
            Err(Error::SingularSystem { .. }) => {}
            other => panic!("expected singular error, got {other:?}"),
        }
    }
}
