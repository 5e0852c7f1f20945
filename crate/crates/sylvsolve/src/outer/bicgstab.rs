//! BiCGSTAB carried out on matrix-shaped iterates with the Frobenius inner
//! product, with an optional approximate-inverse preconditioner.
//!
//! Divergence (a non-finite recurrence scalar) is detected and reported as a
//! non-converged run with a NaN residual norm rather than an error: it is a
//! legitimate experimental outcome for this method.

use super::precond::SylvesterPreconditioner;
use super::{SolveReport, SolverOptions};
use crate::dense::{frobenius_inner, frobenius_norm, DenseMatrix};
use crate::error::{Error, Result};
use crate::sylvester::{apply_sylvester, residual, SylvesterProblem};
use std::time::Instant;

const RHO_BREAKDOWN_RTOL: f64 = 1e-30;

/// Solve `AX + XB = C` by BiCGSTAB, starting from the zero matrix. When a
/// preconditioner is given, every search direction is passed through it
/// before the operator is applied. `inner_iteration_total` counts
/// preconditioner applications.
pub fn bicgstab_solve(
    problem: &SylvesterProblem,
    precond: Option<&dyn SylvesterPreconditioner>,
    opts: &SolverOptions,
) -> Result<(DenseMatrix, SolveReport)> {
    let start = Instant::now();
    let a = problem.a();
    let b = problem.b();
    let mut x = DenseMatrix::zeros(problem.n(), problem.m());
    let mut r = residual(problem, &x)?;
    let r0_norm = frobenius_norm(&r);
    let mut history = vec![r0_norm];
    let mut precond_applications = 0usize;

    let report = |converged: bool,
                  iterations: usize,
                  history: Vec<f64>,
                  final_residual: f64,
                  inner: usize,
                  start: Instant| SolveReport {
        converged,
        iterations,
        residual_history: history,
        final_residual,
        wall_time: start.elapsed(),
        inner_iteration_total: inner,
    };

    if r0_norm == 0.0 {
        return Ok((x, report(true, 0, history, 0.0, 0, start)));
    }
    let floor = opts.outer_tol * r0_norm;

    let r_hat = r.clone();
    let r_hat_norm = r0_norm;
    let mut rho_prev = 1.0f64;
    let mut alpha = 1.0f64;
    let mut omega = 1.0f64;
    let mut p = DenseMatrix::zeros(problem.n(), problem.m());
    let mut v = DenseMatrix::zeros(problem.n(), problem.m());

    let apply_precond = |z: &DenseMatrix, count: &mut usize| -> Result<DenseMatrix> {
        match precond {
            Some(pc) => {
                *count += 1;
                pc.apply(z)
            }
            None => Ok(z.clone()),
        }
    };

    for it in 1..=opts.maxit {
        let rho = frobenius_inner(&r_hat, &r)?;
        if !rho.is_finite() {
            history.push(f64::NAN);
            return Ok((x, report(false, it, history, f64::NAN, precond_applications, start)));
        }
        let r_norm = frobenius_norm(&r);
        if rho.abs() < RHO_BREAKDOWN_RTOL * r_hat_norm * r_norm {
            return Err(Error::Breakdown {
                method: "bicgstab",
                detail: format!("rho = {rho:e} below breakdown threshold"),
            });
        }
        if it == 1 {
            p = r.clone();
        } else {
            let beta = (rho / rho_prev) * (alpha / omega);
            p.axpy(-omega, &v);
            p.scale(beta);
            p.axpy(1.0, &r);
        }
        let p_hat = apply_precond(&p, &mut precond_applications)?;
        v = apply_sylvester(a, b, &p_hat)?;
        let denom = frobenius_inner(&r_hat, &v)?;
        alpha = rho / denom;
        if !alpha.is_finite() {
            history.push(f64::NAN);
            return Ok((x, report(false, it, history, f64::NAN, precond_applications, start)));
        }

        let mut s = r.clone();
        s.axpy(-alpha, &v);
        let s_norm = frobenius_norm(&s);
        if !s_norm.is_finite() {
            history.push(f64::NAN);
            return Ok((x, report(false, it, history, f64::NAN, precond_applications, start)));
        }
        if s_norm <= floor {
            x.axpy(alpha, &p_hat);
            history.push(s_norm);
            return Ok((x, report(true, it, history, s_norm, precond_applications, start)));
        }

        let s_hat = apply_precond(&s, &mut precond_applications)?;
        let t = apply_sylvester(a, b, &s_hat)?;
        let tt = frobenius_inner(&t, &t)?;
        if tt == 0.0 {
            return Err(Error::Breakdown {
                method: "bicgstab",
                detail: "zero <T, T> denominator".into(),
            });
        }
        omega = frobenius_inner(&t, &s)? / tt;
        if !omega.is_finite() {
            history.push(f64::NAN);
            return Ok((x, report(false, it, history, f64::NAN, precond_applications, start)));
        }

        x.axpy(alpha, &p_hat);
        x.axpy(omega, &s_hat);
        r = s;
        r.axpy(-omega, &t);

        let r_next = frobenius_norm(&r);
        history.push(r_next);
        if !r_next.is_finite() {
            return Ok((x, report(false, it, history, f64::NAN, precond_applications, start)));
        }
        if r_next <= floor {
            return Ok((x, report(true, it, history, r_next, precond_applications, start)));
        }
        rho_prev = rho;
    }

    let final_residual = *history.last().expect("history is never empty");
    Ok((
        x,
        report(
            false,
            opts.maxit,
            history,
            final_residual,
            precond_applications,
            start,
        ),
    ))
}
