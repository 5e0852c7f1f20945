//! Row-major dense matrices and the small kernel set the solvers are built on:
//! products, Frobenius inner products, Hermitian/skew splitting, Kronecker
//! products and the column-stacking `vec` map.

use crate::error::{Error, Result};

/// Maximum number of entries a materialized Kronecker product may have.
/// Anything larger is oracle abuse, not a solver path.
pub const KRON_BUDGET: usize = 1_000_000;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// All entries set to `value`.
    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, 1.0)
    }

    /// Build from a row-major slice. Rejects length mismatches and non-finite
    /// entries.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for {}x{}, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {bad}")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_rows(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Matrix product `self * rhs`. Each output entry is accumulated over the
    /// inner index in increasing order, so results are reproducible bit for
    /// bit across runs.
    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == 0.0 {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += aik * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec length mismatch");
        let mut y = vec![0.0; self.rows];
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            *yi = acc;
        }
        y
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: f64, x: &DenseMatrix) {
        assert_eq!(self.shape(), x.shape(), "axpy shape mismatch");
        for (s, v) in self.data.iter_mut().zip(&x.data) {
            *s += a * v;
        }
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.scale(s);
        out
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        Ok(out)
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op: "sub",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `self + s * I`; square input required.
    pub fn shifted(&self, s: f64) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i * self.cols + i] += s;
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Frobenius inner product `sum_ij A_ij B_ij`, accumulated in row-major
/// order (fixed summation order keeps solver runs reproducible).
pub fn frobenius_inner(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            op: "frobenius_inner",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut acc = 0.0;
    for (x, y) in a.data.iter().zip(&b.data) {
        acc += x * y;
    }
    Ok(acc)
}

/// Frobenius norm `sqrt(<A, A>_F)`.
pub fn frobenius_norm(a: &DenseMatrix) -> f64 {
    let mut acc = 0.0;
    for x in &a.data {
        acc += x * x;
    }
    acc.sqrt()
}

/// Split a square matrix into its symmetric part `H = (A + A^T)/2` and
/// skew-symmetric part `S = (A - A^T)/2`.
pub fn hermitian_skew_split(a: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut h = DenseMatrix::zeros(n, n);
    let mut s = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let aij = a.get(i, j);
            let aji = a.get(j, i);
            h.set(i, j, (aij + aji) / 2.0);
            s.set(i, j, (aij - aji) / 2.0);
        }
    }
    Ok((h, s))
}

/// Kronecker product `A ⊗ B = [a_ij B]`, capped at [`KRON_BUDGET`] entries.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let entries = rows.saturating_mul(cols);
    if entries > KRON_BUDGET {
        return Err(Error::OracleBudget {
            entries,
            budget: KRON_BUDGET,
        });
    }
    let mut out = DenseMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let av = a.get(ia, ja);
            if av == 0.0 {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out.set(ia * b.rows + ib, ja * b.cols + jb, av * b.get(ib, jb));
                }
            }
        }
    }
    Ok(out)
}

/// Column-stacking map: `vec(X) = (x_11, x_21, ..., x_n1, x_12, ...)`.
pub fn vec_of(x: &DenseMatrix) -> Vec<f64> {
    let mut v = Vec::with_capacity(x.rows * x.cols);
    for j in 0..x.cols {
        for i in 0..x.rows {
            v.push(x.get(i, j));
        }
    }
    v
}

/// Inverse of [`vec_of`].
pub fn unvec(v: &[f64], rows: usize, cols: usize) -> Result<DenseMatrix> {
    if v.len() != rows * cols {
        return Err(Error::InvalidMatrix(format!(
            "unvec: expected {} entries for {}x{}, got {}",
            rows * cols,
            rows,
            cols,
            v.len()
        )));
    }
    let mut x = DenseMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            x.set(i, j, v[j * rows + i]);
        }
    }
    Ok(x)
}

/// Tridiagonal Toeplitz matrix `tridiag(lower, diag, upper)` of order `n`.
pub fn tridiag(n: usize, lower: f64, diag: f64, upper: f64) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, diag);
        if i > 0 {
            m.set(i, i - 1, lower);
        }
        if i + 1 < n {
            m.set(i, i + 1, upper);
        }
    }
    m
}
