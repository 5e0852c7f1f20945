//! Vec-space reference implementation of the minimal-residual HSS iteration.
//!
//! Works on the stacked `nm x nm` system: materializes the Kronecker matrix,
//! splits it into Hermitian and skew parts, factors both shifted parts once,
//! and then runs the two-half-step scheme with its step lengths
//!
//! ```text
//! beta_k  = (r, M1 r) / ||M1 r||^2          M1 = K (ahat I + H)^-1
//! gamma_k = (M r', M M2 r') / ||M M2 r'||^2  M  = (ahat I + H)^-1,  M2 = K (ahat I + S)^-1
//! ```
//!
//! Deliberately independent of the matrix-form solver: it exists to check it.

use super::guarded_step;
use crate::dense::{hermitian_skew_split, vec_of, DenseMatrix};
use crate::error::{Error, Result};
use crate::inner::{kron_sylvester_matrix, DIRECT_BUDGET};
use crate::lu::LuFactors;

#[derive(Debug, Clone)]
pub struct VecReferenceReport {
    pub converged: bool,
    pub iterations: usize,
    /// 2-norms of the stacked residual per iteration, entry 0 the initial one.
    pub residual_history: Vec<f64>,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Run the stacked-system iteration for `AX + XB = C` with shift `alpha_hat`
/// (the full shift; twice the matrix-form half-shift). Returns the stacked
/// solution vector in column-stacking order plus the per-iteration report.
pub fn mrhss_vec_reference(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    alpha_hat: f64,
    outer_tol: f64,
    maxit: usize,
) -> Result<(Vec<f64>, VecReferenceReport)> {
    let n = a.rows();
    let m = b.rows();
    if c.rows() != n || c.cols() != m {
        return Err(Error::ShapeMismatch {
            op: "mrhss_vec_reference",
            left: (n, m),
            right: c.shape(),
        });
    }
    if n * m > DIRECT_BUDGET {
        return Err(Error::OracleBudget {
            entries: n * m,
            budget: DIRECT_BUDGET,
        });
    }
    if alpha_hat <= 0.0 || alpha_hat.is_nan() {
        return Err(Error::NonPositiveShift(alpha_hat));
    }

    let stacked = kron_sylvester_matrix(a, b)?;
    let (h, s) = hermitian_skew_split(&stacked)?;
    let lu_h = LuFactors::factor(&h.shifted(alpha_hat)?)?;
    let lu_s = LuFactors::factor(&s.shifted(alpha_hat)?)?;

    let c_vec = vec_of(c);
    let mut x = vec![0.0f64; n * m];
    let mut r = c_vec;
    let r0_norm = norm(&r);
    let mut history = vec![r0_norm];
    let mut betas = Vec::new();
    let mut gammas = Vec::new();

    if r0_norm == 0.0 {
        return Ok((
            x,
            VecReferenceReport {
                converged: true,
                iterations: 0,
                residual_history: history,
                betas,
                gammas,
            },
        ));
    }
    let floor = outer_tol * r0_norm;

    let mut d = lu_h.solve(&r);
    let mut iterations = 0usize;
    let mut converged = false;
    let mut res_norm = r0_norm;

    while iterations < maxit {
        let w = stacked.matvec(&d); // M1 r^(k)
        let beta = guarded_step("mrhss_vec", dot(&r, &w), dot(&w, &w), res_norm, floor)?;
        axpy(&mut x, beta, &d);
        axpy(&mut r, -beta, &w);
        let half_norm = norm(&r);

        let d_half = lu_s.solve(&r);
        let zeta = lu_h.solve(&r); // M r^(k+1/2)
        let u = stacked.matvec(&d_half); // M2 r^(k+1/2)
        let v = lu_h.solve(&u); // M M2 r^(k+1/2)

        let gamma = guarded_step("mrhss_vec", dot(&zeta, &v), dot(&v, &v), half_norm, floor)?;
        axpy(&mut x, gamma, &d_half);
        axpy(&mut r, -gamma, &u);
        d = zeta;
        axpy(&mut d, -gamma, &v);

        betas.push(beta);
        gammas.push(gamma);
        iterations += 1;
        res_norm = norm(&r);
        history.push(res_norm);
        if res_norm <= floor {
            converged = true;
            break;
        }
    }

    Ok((
        x,
        VecReferenceReport {
            converged,
            iterations,
            residual_history: history,
            betas,
            gammas,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_first_step_length() {
        // a = 2, b = 3, c = 10, alpha_hat = 2: stacked system is 5x = 10 with
        // H = 5, so M1 = 5/7 and beta_0 = (10 * 50/7) / (50/7)^2 = 7/5.
        let a = DenseMatrix::from_rows(1, 1, vec![2.0]).unwrap();
        let b = DenseMatrix::from_rows(1, 1, vec![3.0]).unwrap();
        let c = DenseMatrix::from_rows(1, 1, vec![10.0]).unwrap();
        let (x, report) = mrhss_vec_reference(&a, &b, &c, 2.0, 1e-12, 50).unwrap();
        assert!((report.betas[0] - 1.4).abs() < 1e-14);
        assert!(report.converged);
        assert!((x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_rhs_converges_at_step_zero() {
        let a = DenseMatrix::identity(3);
        let b = DenseMatrix::identity(2);
        let c = DenseMatrix::zeros(3, 2);
        let (_, report) = mrhss_vec_reference(&a, &b, &c, 1.0, 1e-8, 10).unwrap();
        assert!(report.converged);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn budget_is_enforced() {
        let a = DenseMatrix::identity(40);
        let b = DenseMatrix::identity(40);
        let c = DenseMatrix::zeros(40, 40);
        match mrhss_vec_reference(&a, &b, &c, 1.0, 1e-8, 10) {
            Err(Error::OracleBudget { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
