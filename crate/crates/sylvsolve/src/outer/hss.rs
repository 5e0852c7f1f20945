//! The stationary HSS baseline.
//!
//! Each outer iteration alternates the two shifted half-steps
//!
//! ```text
//! H_A(alpha) X^(k+1/2) + X^(k+1/2) H_B(alpha) = (alpha I - S_A) X^(k) + X^(k) (alpha I - S_B) + C
//! S_A(alpha) X^(k+1)   + X^(k+1)   S_B(alpha) = (alpha I - H_A) X^(k+1/2) + X^(k+1/2) (alpha I - H_B) + C
//! ```
//!
//! carried out in residual-correction form: subtracting the shifted operator
//! applied to the current iterate from both sides turns each half-step into a
//! shift-solve against the current residual, `X <- X + solve(R)`. That is the
//! same half-step algebraically, but it lets the inner iterations start from
//! the zero matrix with a tolerance that tracks the outer residual instead of
//! the full right-hand side.

use super::{SolveReport, SolverOptions};
use crate::coeff::Coefficient;
use crate::dense::{frobenius_norm, DenseMatrix};
use crate::error::Result;
use crate::inner::InnerEngine;
use crate::sylvester::{apply_sylvester, build_splitting, SplittingBundle, SylvesterProblem};
use std::time::Instant;

/// Solve `AX + XB = C` by the stationary HSS iteration with half-shift
/// `alpha`, starting from the zero matrix.
pub fn hss_solve(
    problem: &SylvesterProblem,
    alpha: f64,
    opts: &SolverOptions,
) -> Result<(DenseMatrix, SolveReport)> {
    let bundle = build_splitting(problem.a(), problem.b(), alpha)?;
    hss_core(problem.a(), problem.b(), problem.c(), &bundle, opts)
}

pub(crate) fn hss_core(
    a: &Coefficient,
    b: &Coefficient,
    c: &DenseMatrix,
    bundle: &SplittingBundle,
    opts: &SolverOptions,
) -> Result<(DenseMatrix, SolveReport)> {
    let start = Instant::now();
    let mut x = DenseMatrix::zeros(c.rows(), c.cols());
    let mut r = c.clone();
    let r0_norm = frobenius_norm(&r);
    let mut history = vec![r0_norm];
    let mut inner_total = 0usize;

    if r0_norm == 0.0 {
        return Ok((
            x,
            SolveReport {
                converged: true,
                iterations: 0,
                residual_history: history,
                final_residual: 0.0,
                wall_time: start.elapsed(),
                inner_iteration_total: 0,
            },
        ));
    }

    let floor = opts.outer_tol * r0_norm;
    let engine = InnerEngine::new(bundle, &opts.inner)?;

    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < opts.maxit {
        let (delta, used) = engine.solve_hermitian(bundle, &r)?;
        inner_total += used;
        x.axpy(1.0, &delta);
        r = fresh_residual(a, b, c, &x)?;

        let (delta, used) = engine.solve_skew(bundle, &r)?;
        inner_total += used;
        x.axpy(1.0, &delta);
        r = fresh_residual(a, b, c, &x)?;

        iterations += 1;
        let res_norm = frobenius_norm(&r);
        history.push(res_norm);
        if res_norm <= floor {
            converged = true;
            break;
        }
    }

    let final_residual = *history.last().expect("history is never empty");
    Ok((
        x,
        SolveReport {
            converged,
            iterations,
            residual_history: history,
            final_residual,
            wall_time: start.elapsed(),
            inner_iteration_total: inner_total,
        },
    ))
}

fn fresh_residual(
    a: &Coefficient,
    b: &Coefficient,
    c: &DenseMatrix,
    x: &DenseMatrix,
) -> Result<DenseMatrix> {
    let lx = apply_sylvester(a, b, x)?;
    c.sub(&lx)
}
