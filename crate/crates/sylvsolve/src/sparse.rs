//! Compressed-sparse-row storage for large coefficient matrices.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// CSR matrix with strictly increasing column indices within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCsr {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseCsr {
    /// Build from raw CSR arrays, validating every storage invariant.
    pub fn new(
        rows: usize,
        cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        vals: Vec<f64>,
    ) -> Result<Self> {
        if row_ptr.len() != rows + 1 {
            return Err(Error::InvalidMatrix(format!(
                "row_ptr length {} != rows+1 = {}",
                row_ptr.len(),
                rows + 1
            )));
        }
        if row_ptr[0] != 0 || row_ptr[rows] != vals.len() || vals.len() != col_idx.len() {
            return Err(Error::InvalidMatrix(
                "row_ptr must start at 0 and end at nnz".into(),
            ));
        }
        for i in 0..rows {
            if row_ptr[i] > row_ptr[i + 1] {
                return Err(Error::InvalidMatrix(format!(
                    "row_ptr decreases at row {i}"
                )));
            }
            let seg = &col_idx[row_ptr[i]..row_ptr[i + 1]];
            for w in seg.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidMatrix(format!(
                        "column indices not strictly increasing in row {i}"
                    )));
                }
            }
            if let Some(&last) = seg.last() {
                if last >= cols {
                    return Err(Error::InvalidMatrix(format!(
                        "column index {last} out of bounds in row {i}"
                    )));
                }
            }
        }
        if let Some(bad) = vals.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {bad}")));
        }
        Ok(Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            vals,
        })
    }

    /// Build from coordinate triplets. Duplicate coordinates are summed;
    /// explicit zeros are kept.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        for &(i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::InvalidMatrix(format!(
                    "triplet ({i},{j}) out of bounds for {rows}x{cols}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidMatrix(format!("non-finite entry {v}")));
            }
        }
        let mut sorted: Vec<(usize, usize, f64)> = triplets.to_vec();
        sorted.sort_by_key(|t| (t.0, t.1));

        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(sorted.len());
        for (i, j, v) in sorted {
            match merged.last_mut() {
                Some((pi, pj, pv)) if *pi == i && *pj == j => *pv += v,
                _ => merged.push((i, j, v)),
            }
        }
        let mut row_ptr = vec![0usize; rows + 1];
        for &(i, _, _) in &merged {
            row_ptr[i + 1] += 1;
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let col_idx = merged.iter().map(|t| t.1).collect();
        let vals = merged.iter().map(|t| t.2).collect();
        Self::new(rows, cols, row_ptr, col_idx, vals)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[span.clone()], &self.vals[span])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn transpose(&self) -> SparseCsr {
        let triplets: Vec<(usize, usize, f64)> = self.iter().map(|(i, j, v)| (j, i, v)).collect();
        SparseCsr::from_triplets(self.cols, self.rows, &triplets)
            .expect("transpose of a valid matrix is valid")
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            d.set(i, j, v);
        }
        d
    }

    /// Sparse matrix times vector.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec length mismatch");
        let mut y = vec![0.0; self.rows];
        for (i, yi) in y.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (&j, &v) in cols.iter().zip(vals) {
                acc += v * x[j];
            }
            *yi = acc;
        }
        y
    }

    /// `self * X` for dense `X`.
    pub fn mul_dense(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != x.rows() {
            return Err(Error::ShapeMismatch {
                op: "sparse * dense",
                left: (self.rows, self.cols),
                right: x.shape(),
            });
        }
        let m = x.cols();
        let mut out = DenseMatrix::zeros(self.rows, m);
        for i in 0..self.rows {
            let (cols, vals) = self.row(i);
            for (&k, &v) in cols.iter().zip(vals) {
                for j in 0..m {
                    out[(i, j)] += v * x.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `X * self` for dense `X`.
    pub fn rmul_dense(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        if x.cols() != self.rows {
            return Err(Error::ShapeMismatch {
                op: "dense * sparse",
                left: x.shape(),
                right: (self.rows, self.cols),
            });
        }
        let n = x.rows();
        let mut out = DenseMatrix::zeros(n, self.cols);
        for k in 0..self.rows {
            let (cols, vals) = self.row(k);
            for (&j, &v) in cols.iter().zip(vals) {
                for i in 0..n {
                    out[(i, j)] += x.get(i, k) * v;
                }
            }
        }
        Ok(out)
    }
}

/// Symmetric/skew-symmetric split of a square sparse matrix, keeping CSR
/// storage (the split of a sparse matrix stays sparse).
pub fn hermitian_skew_split_sparse(a: &SparseCsr) -> Result<(SparseCsr, SparseCsr)> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut h_trip = Vec::with_capacity(2 * a.nnz());
    let mut s_trip = Vec::with_capacity(2 * a.nnz());
    for (i, j, v) in a.iter() {
        h_trip.push((i, j, v / 2.0));
        h_trip.push((j, i, v / 2.0));
        s_trip.push((i, j, v / 2.0));
        s_trip.push((j, i, -v / 2.0));
    }
    let h = SparseCsr::from_triplets(n, n, &h_trip)?;
    let s = SparseCsr::from_triplets(n, n, &s_trip)?;
    Ok((h, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::frobenius_norm;

    fn sample() -> SparseCsr {
        // [[1, 0, 2], [0, 0, 3], [4, 5, 0]]
        SparseCsr::from_triplets(3, 3, &[(0, 0, 1.0), (0, 2, 2.0), (1, 2, 3.0), (2, 0, 4.0), (2, 1, 5.0)])
            .unwrap()
    }

    #[test]
    fn triplets_sum_duplicates() {
        let m = SparseCsr::from_triplets(2, 2, &[(0, 0, 1.0), (0, 0, 2.0)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.to_dense().get(0, 0), 3.0);
    }

    #[test]
    fn new_validates_invariants() {
        // decreasing column indices in a row
        assert!(SparseCsr::new(1, 3, vec![0, 2], vec![2, 1], vec![1.0, 1.0]).is_err());
        // bad row_ptr tail
        assert!(SparseCsr::new(1, 3, vec![0, 1], vec![0, 1], vec![1.0, 1.0]).is_err());
        // out-of-range column
        assert!(SparseCsr::new(1, 2, vec![0, 1], vec![5], vec![1.0]).is_err());
    }

    #[test]
    fn matvec_and_dense_agree() {
        let m = sample();
        let d = m.to_dense();
        let x = vec![1.0, -2.0, 0.5];
        assert_eq!(m.matvec(&x), d.matvec(&x));
    }

    #[test]
    fn mul_dense_agrees_with_dense_product() {
        let m = sample();
        let x = DenseMatrix::from_fn(3, 2, |i, j| (i + 2 * j) as f64).unwrap();
        let sparse_prod = m.mul_dense(&x).unwrap();
        let dense_prod = m.to_dense().matmul(&x).unwrap();
        assert_eq!(sparse_prod, dense_prod);

        let y = DenseMatrix::from_fn(2, 3, |i, j| (1 + i * j) as f64).unwrap();
        let sparse_r = m.rmul_dense(&y).unwrap();
        let dense_r = y.matmul(&m.to_dense()).unwrap();
        assert_eq!(sparse_r, dense_r);
    }

    #[test]
    fn sparse_split_matches_dense_split() {
        let m = sample();
        let (h, s) = hermitian_skew_split_sparse(&m).unwrap();
        let (hd, sd) = crate::dense::hermitian_skew_split(&m.to_dense()).unwrap();
        assert_eq!(h.to_dense(), hd);
        assert_eq!(s.to_dense(), sd);
        // reconstruction
        let back = h.to_dense().add(&s.to_dense()).unwrap();
        assert!(frobenius_norm(&back.sub(&m.to_dense()).unwrap()) == 0.0);
    }
}
