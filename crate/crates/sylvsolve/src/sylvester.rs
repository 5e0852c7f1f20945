//! The Sylvester operator `L(X) = AX + XB`, its residual, the shifted
//! Hermitian/skew-Hermitian split operators and the shift selection rule.

use crate::coeff::Coefficient;
use crate::dense::DenseMatrix;
use crate::eigen::extreme_eigs_sym;
use crate::error::{Error, Result};

/// The triple `(A, B, C)` of `AX + XB = C`, with `A` of order `n` and `B` of
/// order `m`. Uniqueness of the solution requires `A` and `-B` to share no
/// eigenvalues; that assumption is documented here and surfaced by the direct
/// solver when violated, not checked globally.
#[derive(Debug, Clone)]
pub struct SylvesterProblem {
    a: Coefficient,
    b: Coefficient,
    c: DenseMatrix,
}

impl SylvesterProblem {
    pub fn new(a: Coefficient, b: Coefficient, c: DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !b.is_square() {
            return Err(Error::NonSquare {
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        if c.rows() != a.rows() || c.cols() != b.rows() {
            return Err(Error::ShapeMismatch {
                op: "sylvester problem",
                left: (a.rows(), b.rows()),
                right: c.shape(),
            });
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> &Coefficient {
        &self.a
    }

    pub fn b(&self) -> &Coefficient {
        &self.b
    }

    pub fn c(&self) -> &DenseMatrix {
        &self.c
    }

    /// Order of `A`.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Order of `B`.
    pub fn m(&self) -> usize {
        self.b.rows()
    }
}

/// `AX + XB`.
pub fn apply_sylvester(a: &Coefficient, b: &Coefficient, x: &DenseMatrix) -> Result<DenseMatrix> {
    let mut ax = a.mul_dense(x)?;
    let xb = b.rmul_dense(x)?;
    ax.axpy(1.0, &xb);
    Ok(ax)
}

/// Residual `C - AX - XB`.
pub fn residual(problem: &SylvesterProblem, x: &DenseMatrix) -> Result<DenseMatrix> {
    let lx = apply_sylvester(&problem.a, &problem.b, x)?;
    problem.c.sub(&lx)
}

/// All split operators of one problem: symmetric parts `H_A`, `H_B`,
/// skew-symmetric parts `S_A`, `S_B`, and the half-shift `alpha`
/// (`alpha_hat = 2 alpha` is the shift seen in the stacked Kronecker form).
///
/// The splits keep the storage kind of their coefficient so sparse problems
/// stay sparse; the shifted operators are applied matrix-free.
#[derive(Debug, Clone)]
pub struct SplittingBundle {
    pub h_a: Coefficient,
    pub s_a: Coefficient,
    pub h_b: Coefficient,
    pub s_b: Coefficient,
    pub alpha: f64,
    pub alpha_hat: f64,
}

impl SplittingBundle {
    pub fn n(&self) -> usize {
        self.h_a.rows()
    }

    pub fn m(&self) -> usize {
        self.h_b.rows()
    }

    /// Shifted Hermitian operator `H_A(alpha) X + X H_B(alpha)
    /// = alpha_hat X + H_A X + X H_B`.
    pub fn apply_hermitian_shifted(&self, x: &DenseMatrix) -> DenseMatrix {
        let mut out = self.h_a.mul_dense(x).expect("bundle shapes are validated");
        let xh = self.h_b.rmul_dense(x).expect("bundle shapes are validated");
        out.axpy(1.0, &xh);
        out.axpy(self.alpha_hat, x);
        out
    }

    /// Shifted skew operator `S_A(alpha) X + X S_B(alpha)
    /// = alpha_hat X + S_A X + X S_B`.
    pub fn apply_skew_shifted(&self, x: &DenseMatrix) -> DenseMatrix {
        let mut out = self.s_a.mul_dense(x).expect("bundle shapes are validated");
        let xs = self.s_b.rmul_dense(x).expect("bundle shapes are validated");
        out.axpy(1.0, &xs);
        out.axpy(self.alpha_hat, x);
        out
    }

    /// Dense `alpha I + H_A` (and friends) for oracle-scale factorization.
    pub fn shifted_dense_parts(&self) -> Result<(DenseMatrix, DenseMatrix, DenseMatrix, DenseMatrix)> {
        let ha = self.h_a.to_dense().shifted(self.alpha)?;
        let hb = self.h_b.to_dense().shifted(self.alpha)?;
        let sa = self.s_a.to_dense().shifted(self.alpha)?;
        let sb = self.s_b.to_dense().shifted(self.alpha)?;
        Ok((ha, hb, sa, sb))
    }
}

/// Split `A` and `B` and attach the half-shift `alpha > 0`.
pub fn build_splitting(a: &Coefficient, b: &Coefficient, alpha: f64) -> Result<SplittingBundle> {
    if alpha <= 0.0 || alpha.is_nan() {
        return Err(Error::NonPositiveShift(alpha));
    }
    let (h_a, s_a) = a.split()?;
    let (h_b, s_b) = b.split()?;
    Ok(SplittingBundle {
        h_a,
        s_a,
        h_b,
        s_b,
        alpha,
        alpha_hat: 2.0 * alpha,
    })
}

/// Extreme eigenvalues of the Hermitian part of the stacked operator,
/// obtained from the eigenvalue-sum identity: every eigenvalue of the stacked
/// Hermitian part is `lambda_i(H_A) + lambda_j(H_B)`.
pub fn hermitian_part_extent(a: &Coefficient, b: &Coefficient, eig_tol: f64) -> Result<(f64, f64)> {
    let (h_a, _) = a.split()?;
    let (h_b, _) = b.split()?;
    let (lo_a, hi_a) = extreme_eigs_sym(&h_a, eig_tol)?;
    let (lo_b, hi_b) = extreme_eigs_sym(&h_b, eig_tol)?;
    Ok((lo_a + lo_b, hi_a + hi_b))
}

/// Half-shift `alpha = sqrt(lambda_min * lambda_max) / 2` over the spectrum
/// of the stacked Hermitian part. Fails when that part is not positive
/// definite. Eigenvalue estimates at 1e-6 relative accuracy are plenty: the
/// shift enters iteration counts only through its order of magnitude.
pub fn select_alpha(a: &Coefficient, b: &Coefficient) -> Result<f64> {
    let (lo, hi) = hermitian_part_extent(a, b, 1e-6)?;
    if lo <= 0.0 || lo.is_nan() {
        return Err(Error::IndefiniteHermitianPart { lambda_min: lo });
    }
    let alpha_hat = (lo * hi).sqrt();
    Ok(alpha_hat / 2.0)
}
