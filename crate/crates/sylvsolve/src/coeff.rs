//! A coefficient matrix that is either dense or CSR. The solvers only ever
//! apply coefficients to dense iterates, so this is the whole interface.

use crate::dense::{hermitian_skew_split, DenseMatrix};
use crate::error::{Error, Result};
use crate::sparse::{hermitian_skew_split_sparse, SparseCsr};

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Dense(DenseMatrix),
    Sparse(SparseCsr),
}

impl Coefficient {
    pub fn rows(&self) -> usize {
        match self {
            Coefficient::Dense(m) => m.rows(),
            Coefficient::Sparse(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Coefficient::Dense(m) => m.cols(),
            Coefficient::Sparse(m) => m.cols(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// `self * X`.
    pub fn mul_dense(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        match self {
            Coefficient::Dense(m) => m.matmul(x),
            Coefficient::Sparse(m) => m.mul_dense(x),
        }
    }

    /// `X * self`.
    pub fn rmul_dense(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        match self {
            Coefficient::Dense(m) => x.matmul(m),
            Coefficient::Sparse(m) => m.rmul_dense(x),
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Coefficient::Dense(m) => m.matvec(x),
            Coefficient::Sparse(m) => m.matvec(x),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Coefficient::Dense(m) => m.clone(),
            Coefficient::Sparse(m) => m.to_dense(),
        }
    }

    /// Symmetric/skew-symmetric split, preserving the storage kind.
    pub fn split(&self) -> Result<(Coefficient, Coefficient)> {
        match self {
            Coefficient::Dense(m) => {
                let (h, s) = hermitian_skew_split(m)?;
                Ok((Coefficient::Dense(h), Coefficient::Dense(s)))
            }
            Coefficient::Sparse(m) => {
                let (h, s) = hermitian_skew_split_sparse(m)?;
                Ok((Coefficient::Sparse(h), Coefficient::Sparse(s)))
            }
        }
    }

    /// Largest entry deviation from symmetry, `max |A_ij - A_ji|`.
    pub fn max_asymmetry(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        match self {
            Coefficient::Dense(m) => {
                let mut worst = 0.0_f64;
                for i in 0..m.rows() {
                    for j in (i + 1)..m.cols() {
                        worst = worst.max((m.get(i, j) - m.get(j, i)).abs());
                    }
                }
                Ok(worst)
            }
            Coefficient::Sparse(m) => {
                let diff = m
                    .to_triplet_diff_with_transpose()
                    .into_iter()
                    .fold(0.0_f64, f64::max);
                Ok(diff)
            }
        }
    }
}

impl SparseCsr {
    /// Entrywise `|A - A^T|` magnitudes over the union sparsity pattern.
    pub(crate) fn to_triplet_diff_with_transpose(&self) -> Vec<f64> {
        let t = self.transpose();
        let mut entries: std::collections::BTreeMap<(usize, usize), f64> =
            std::collections::BTreeMap::new();
        for (i, j, v) in self.iter() {
            *entries.entry((i, j)).or_insert(0.0) += v;
        }
        for (i, j, v) in t.iter() {
            *entries.entry((i, j)).or_insert(0.0) -= v;
        }
        entries.into_values().map(f64::abs).collect()
    }
}

impl From<DenseMatrix> for Coefficient {
    fn from(m: DenseMatrix) -> Self {
        Coefficient::Dense(m)
    }
}

impl From<SparseCsr> for Coefficient {
    fn from(m: SparseCsr) -> Self {
        Coefficient::Sparse(m)
    }
}

/// General matrix product with a dense right factor; the left factor may be
/// dense or sparse.
pub fn gemm(a: &Coefficient, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.mul_dense(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::tridiag;

    #[test]
    fn gemm_dispatches_on_kind() {
        let dense: Coefficient = tridiag(3, -1.0, 2.0, -1.0).into();
        let sparse: Coefficient = SparseCsr::from_triplets(
            3,
            3,
            &[
                (0, 0, 2.0),
                (0, 1, -1.0),
                (1, 0, -1.0),
                (1, 1, 2.0),
                (1, 2, -1.0),
                (2, 1, -1.0),
                (2, 2, 2.0),
            ],
        )
        .unwrap()
        .into();
        let x = DenseMatrix::ones(3, 1);
        assert_eq!(gemm(&dense, &x).unwrap(), gemm(&sparse, &x).unwrap());
    }

    #[test]
    fn split_keeps_storage_kind() {
        let sparse: Coefficient = SparseCsr::from_triplets(2, 2, &[(0, 1, 1.0)]).unwrap().into();
        let (h, s) = sparse.split().unwrap();
        assert!(matches!(h, Coefficient::Sparse(_)));
        assert!(matches!(s, Coefficient::Sparse(_)));
        assert_eq!(h.to_dense().data(), &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(s.to_dense().data(), &[0.0, 0.5, -0.5, 0.0]);
    }

    #[test]
    fn asymmetry_measure() {
        let a: Coefficient = DenseMatrix::from_rows(2, 2, vec![1.0, 2.0, 0.0, 1.0])
            .unwrap()
            .into();
        assert_eq!(a.max_asymmetry().unwrap(), 2.0);
        let sym: Coefficient = tridiag(4, -1.0, 2.0, -1.0).into();
        assert_eq!(sym.max_asymmetry().unwrap(), 0.0);
    }
}
