//! Generators for the three benchmark problem families and right-hand sides
//! with a known solution.

use crate::coeff::Coefficient;
use crate::dense::{tridiag, DenseMatrix};
use crate::error::{Error, Result};
use crate::market::load_matrix_market;
use crate::sylvester::{apply_sylvester, SylvesterProblem};
use std::path::{Path, PathBuf};

/// How the right-hand side of a generated problem is built.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum RhsMode {
    /// `C = A 1 + 1 B` with `1` the all-ones matrix, so the exact solution is
    /// known to be all-ones. The default: it makes the error, not just the
    /// residual, checkable.
    #[default]
    KnownSolution,
    /// Use the given `C` verbatim.
    ExplicitC(DenseMatrix),
}

/// Which generator a problem comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Shifted tridiagonal pair: `M + 2rN + (100/(n+1)^2) I`.
    Example1,
    /// Triangular pair built from `diag(1..n)` and the strictly lower
    /// all-ones triangle.
    Example2,
    /// Sparse `A` loaded from a Matrix Market file, `B = tridiag(-1,4,-2)`
    /// of order 8.
    External,
}

/// Everything needed to regenerate one benchmark problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    /// Off-diagonal weight of Examples 1 and 2.
    pub r: f64,
    /// Example 2 scale parameter (enters as `2^-t`).
    pub t: f64,
    /// Matrix file for [`Family::External`].
    pub path: Option<PathBuf>,
    pub rhs_mode: RhsMode,
}

impl ProblemSpec {
    pub fn example1(n: usize, m: usize, r: f64) -> Self {
        Self {
            family: Family::Example1,
            n,
            m,
            r,
            t: 0.0,
            path: None,
            rhs_mode: RhsMode::KnownSolution,
        }
    }

    pub fn example2(n: usize, r: f64, t: f64) -> Self {
        Self {
            family: Family::Example2,
            n,
            m: n,
            r,
            t,
            path: None,
            rhs_mode: RhsMode::KnownSolution,
        }
    }

    pub fn external(path: impl Into<PathBuf>) -> Self {
        Self {
            family: Family::External,
            n: 0,
            m: EXTERNAL_B_ORDER,
            r: 0.0,
            t: 0.0,
            path: Some(path.into()),
            rhs_mode: RhsMode::KnownSolution,
        }
    }

    pub fn with_rhs(mut self, rhs: RhsMode) -> Self {
        self.rhs_mode = rhs;
        self
    }

    /// Build the problem this spec describes.
    pub fn build(&self) -> Result<SylvesterProblem> {
        match self.family {
            Family::Example1 => {
                check_order("n", self.n)?;
                check_order("m", self.m)?;
                let a = example1_coefficient(self.n, self.r);
                let b = example1_coefficient(self.m, self.r);
                assemble(a.into(), b.into(), &self.rhs_mode)
            }
            Family::Example2 => {
                check_order("n", self.n)?;
                if self.m != self.n {
                    return Err(Error::InvalidInput(format!(
                        "example 2 is square; got n = {}, m = {}",
                        self.n, self.m
                    )));
                }
                let a = example2_a(self.n, self.r);
                let b = example2_b(self.n, self.r, self.t);
                assemble(a.into(), b.into(), &self.rhs_mode)
            }
            Family::External => {
                let path = self.path.as_ref().ok_or_else(|| {
                    Error::InvalidInput("external problem needs a matrix path".into())
                })?;
                let a = load_matrix_market(path)?;
                if !a.is_square() {
                    return Err(Error::NonSquare {
                        rows: a.rows(),
                        cols: a.cols(),
                    });
                }
                let b = tridiag(EXTERNAL_B_ORDER, -1.0, 4.0, -2.0);
                assemble(a.into(), b.into(), &self.rhs_mode)
            }
        }
    }
}

/// Order of the fixed `B` coefficient of the external family.
pub const EXTERNAL_B_ORDER: usize = 8;

fn check_order(name: &str, v: usize) -> Result<()> {
    if v < 2 {
        return Err(Error::InvalidInput(format!("{name} must be at least 2, got {v}")));
    }
    Ok(())
}

fn assemble(a: Coefficient, b: Coefficient, rhs: &RhsMode) -> Result<SylvesterProblem> {
    let c = match rhs {
        RhsMode::KnownSolution => {
            let ones = DenseMatrix::ones(a.rows(), b.rows());
            apply_sylvester(&a, &b, &ones)?
        }
        RhsMode::ExplicitC(c) => c.clone(),
    };
    SylvesterProblem::new(a, b, c)
}

fn example1_coefficient(order: usize, r: f64) -> DenseMatrix {
    let mut a = tridiag(order, -1.0, 2.0, -1.0);
    a.axpy(2.0 * r, &tridiag(order, 0.5, 0.0, -0.5));
    let shift = 100.0 / ((order as f64 + 1.0) * (order as f64 + 1.0));
    a.shifted(shift).expect("tridiag is square")
}

fn example2_a(order: usize, r: f64) -> DenseMatrix {
    // diag(1..n) + r * L^T with L the strictly lower all-ones triangle
    DenseMatrix::from_fn(order, order, |i, j| {
        if i == j {
            (i + 1) as f64
        } else if j > i {
            r
        } else {
            0.0
        }
    })
    .expect("finite by construction")
}

fn example2_b(order: usize, r: f64, t: f64) -> DenseMatrix {
    let scale = 2.0f64.powf(-t);
    DenseMatrix::from_fn(order, order, |i, j| {
        if i == j {
            scale + (i + 1) as f64
        } else if j > i {
            r
        } else {
            scale
        }
    })
    .expect("finite by construction")
}

/// Example 1: `A = M + 2rN + (100/(n+1)^2) I`, `B` likewise of order `m`,
/// right-hand side with known all-ones solution.
pub fn gen_example1(n: usize, m: usize, r: f64) -> Result<SylvesterProblem> {
    ProblemSpec::example1(n, m, r).build()
}

/// Example 2 (square): `A = diag(1..n) + rL^T`,
/// `B = 2^-t I + diag(1..n) + rL^T + 2^-t L`.
pub fn gen_example2(n: usize, r: f64, t: f64) -> Result<SylvesterProblem> {
    ProblemSpec::example2(n, r, t).build()
}

/// Example 3: sparse `A` from a Matrix Market file,
/// `B = tridiag(-1, 4, -2)` of order 8.
pub fn gen_example3(path: impl AsRef<Path>) -> Result<SylvesterProblem> {
    ProblemSpec::external(path.as_ref()).build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::frobenius_norm;
    use crate::eigen::extreme_eigs_sym;
    use crate::inner::direct_kron_solve;
    use crate::sylvester::residual;

    #[test]
    fn example1_entries() {
        // n = 3: diagonal 2 + 100/16 = 8.25, off-diagonals -1 +- 0.01
        let p = gen_example1(3, 3, 0.01).unwrap();
        let a = p.a().to_dense();
        for i in 0..3 {
            assert!((a.get(i, i) - 8.25).abs() < 1e-15);
        }
        assert!((a.get(0, 1) - (-1.0 - 0.01)).abs() < 1e-15);
        assert!((a.get(1, 0) - (-1.0 + 0.01)).abs() < 1e-15);
    }

    #[test]
    fn example1_pieces_split_entrywise() {
        // Without the diagonal shift, A = M + 2rN splits back into exactly
        // those pieces: M is symmetric, 2rN is skew.
        let n = 6;
        let r = 0.01;
        let m_part = tridiag(n, -1.0, 2.0, -1.0);
        let mut skew_part = tridiag(n, 0.5, 0.0, -0.5);
        skew_part.scale(2.0 * r);
        let mut a = m_part.clone();
        a.axpy(1.0, &skew_part);

        let (h, s) = crate::dense::hermitian_skew_split(&a).unwrap();
        for i in 0..n {
            for j in 0..n {
                assert!((h.get(i, j) - m_part.get(i, j)).abs() <= 1e-15);
                assert!((s.get(i, j) - skew_part.get(i, j)).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn example1_bundle_parts_entrywise() {
        // H_A = M + (100/81) I and S_A = 2rN at n = 8
        let n = 8;
        let r = 0.01;
        let p = gen_example1(n, n, r).unwrap();
        let bundle = crate::sylvester::build_splitting(p.a(), p.b(), 1.0).unwrap();

        let expect_h = tridiag(n, -1.0, 2.0, -1.0).shifted(100.0 / 81.0).unwrap();
        let mut expect_s = tridiag(n, 0.5, 0.0, -0.5);
        expect_s.scale(2.0 * r);
        let h = bundle.h_a.to_dense();
        let s = bundle.s_a.to_dense();
        for i in 0..n {
            for j in 0..n {
                assert!((h.get(i, j) - expect_h.get(i, j)).abs() <= 1e-15);
                assert!((s.get(i, j) - expect_s.get(i, j)).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn example1_r_zero_is_symmetric() {
        let p = gen_example1(5, 4, 0.0).unwrap();
        let (_, s_a) = p.a().split().unwrap();
        let (_, s_b) = p.b().split().unwrap();
        assert_eq!(frobenius_norm(&s_a.to_dense()), 0.0);
        assert_eq!(frobenius_norm(&s_b.to_dense()), 0.0);
    }

    #[test]
    fn example1_known_solution_recovered_by_oracle() {
        let p = gen_example1(8, 8, 0.01).unwrap();
        let x = direct_kron_solve(p.a(), p.b(), p.c()).unwrap();
        let ones = DenseMatrix::ones(8, 8);
        let err = frobenius_norm(&x.sub(&ones).unwrap());
        assert!(err <= 1e-10, "error {err:e}");
    }

    #[test]
    fn example2_entries() {
        // n = 3, r = 1, t = 1: A = [[1,1,1],[0,2,1],[0,0,3]], B = A + 0.5(I + L)
        let p = gen_example2(3, 1.0, 1.0).unwrap();
        let a = p.a().to_dense();
        assert_eq!(a.data(), &[1.0, 1.0, 1.0, 0.0, 2.0, 1.0, 0.0, 0.0, 3.0]);
        let b = p.b().to_dense();
        let mut expect = a.clone();
        expect.axpy(0.5, &DenseMatrix::identity(3));
        expect.axpy(
            0.5,
            &DenseMatrix::from_fn(3, 3, |i, j| if i > j { 1.0 } else { 0.0 }).unwrap(),
        );
        assert_eq!(b, expect);
    }

    #[test]
    fn example2_degenerate_limit() {
        // r = 0 and 2^-t underflowing to zero leaves B = diag(1..n) exactly
        let p = gen_example2(4, 0.0, 1.0e9).unwrap();
        let b = p.b().to_dense();
        let expect = DenseMatrix::from_fn(4, 4, |i, j| if i == j { (i + 1) as f64 } else { 0.0 }).unwrap();
        assert_eq!(b, expect);
        let a = p.a().to_dense();
        assert_eq!(a, expect);
    }

    #[test]
    fn example3_shape_and_b_entries() {
        use std::io::Write;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.mtx");
        let mut f = std::fs::File::create(&path).unwrap();
        write!(
            f,
            "%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 5.0\n2 2 6.0\n3 3 7.0\n"
        )
        .unwrap();

        let p = gen_example3(&path).unwrap();
        assert_eq!((p.n(), p.m()), (3, EXTERNAL_B_ORDER));
        let b = p.b().to_dense();
        for i in 0..EXTERNAL_B_ORDER {
            assert_eq!(b.get(i, i), 4.0);
            if i > 0 {
                assert_eq!(b.get(i, i - 1), -1.0);
            }
            if i + 1 < EXTERNAL_B_ORDER {
                assert_eq!(b.get(i, i + 1), -2.0);
            }
        }
        // zero guess leaves C as the residual
        let r = residual(&p, &DenseMatrix::zeros(3, EXTERNAL_B_ORDER)).unwrap();
        assert_eq!(&r, p.c());
    }

    #[test]
    fn example2_hermitian_part_positive_definite() {
        let p = gen_example2(8, 0.01, 1.0).unwrap();
        let (h_a, _) = p.a().split().unwrap();
        let (lo, _) = extreme_eigs_sym(&h_a, 1e-10).unwrap();
        assert!(lo > 0.0, "lambda_min(H_A) = {lo}");
    }

    #[test]
    fn residual_of_zero_guess_is_c() {
        let p = gen_example2(4, 0.01, 1.0).unwrap();
        let r = residual(&p, &DenseMatrix::zeros(4, 4)).unwrap();
        assert_eq!(&r, p.c());
    }

    #[test]
    fn example2_requires_square() {
        let mut spec = ProblemSpec::example2(4, 0.01, 1.0);
        spec.m = 5;
        assert!(spec.build().is_err());
    }

    #[test]
    fn orders_below_two_rejected() {
        assert!(gen_example1(1, 4, 0.01).is_err());
        assert!(gen_example2(1, 0.01, 1.0).is_err());
    }
}
