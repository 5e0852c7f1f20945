//! The minimal-residual HSS iteration in matrix form.
//!
//! Each outer iteration performs exactly three inner Sylvester solves — one
//! against the shifted skew operator and two against the shifted Hermitian
//! operator — and picks the two step lengths by exact line search: `beta`
//! minimizes the Frobenius norm of the half-step residual, `gamma` minimizes
//! the norm of the Hermitian-shifted solve of the full-step residual.

use super::{guarded_step, SolveReport, SolverOptions};
use crate::coeff::Coefficient;
use crate::dense::{frobenius_inner, frobenius_norm, DenseMatrix};
use crate::error::Result;
use crate::inner::InnerEngine;
use crate::sylvester::{apply_sylvester, build_splitting, SplittingBundle, SylvesterProblem};
use std::time::Instant;

/// Per-iteration diagnostics captured by [`mrhss_solve_traced`]. The matrices
/// are clones of the iteration state, intended for consistency checks at
/// modest problem sizes.
#[derive(Debug, Clone)]
pub struct MrhssStep {
    pub beta: f64,
    pub gamma: f64,
    /// `||R^(k+1/2)||_F` from the residual recurrence.
    pub half_res_norm: f64,
    /// `||R^(k+1)||_F` from the residual recurrence.
    pub res_norm: f64,
    pub x_half: DenseMatrix,
    pub r_half: DenseMatrix,
    pub x: DenseMatrix,
    pub r: DenseMatrix,
    /// Hermitian-shifted solve of the half-step residual (`V^(k+1/2)`).
    pub v: DenseMatrix,
    /// The recurrence-updated direction `Delta^(k+1) = V - gamma U`.
    pub delta_next: DenseMatrix,
}

#[derive(Debug, Clone, Default)]
pub struct MrhssTrace {
    pub steps: Vec<MrhssStep>,
}

/// Solve `AX + XB = C` by the minimal-residual HSS iteration with half-shift
/// `alpha`, starting from the zero matrix.
pub fn mrhss_solve(
    problem: &SylvesterProblem,
    alpha: f64,
    opts: &SolverOptions,
) -> Result<(DenseMatrix, SolveReport)> {
    let bundle = build_splitting(problem.a(), problem.b(), alpha)?;
    mrhss_core(problem.a(), problem.b(), problem.c(), &bundle, opts, None)
}

/// As [`mrhss_solve`], additionally recording per-iteration state.
pub fn mrhss_solve_traced(
    problem: &SylvesterProblem,
    alpha: f64,
    opts: &SolverOptions,
) -> Result<(DenseMatrix, SolveReport, MrhssTrace)> {
    let bundle = build_splitting(problem.a(), problem.b(), alpha)?;
    let mut trace = MrhssTrace::default();
    let (x, report) = mrhss_core(
        problem.a(),
        problem.b(),
        problem.c(),
        &bundle,
        opts,
        Some(&mut trace),
    )?;
    Ok((x, report, trace))
}

pub(crate) fn mrhss_core(
    a: &Coefficient,
    b: &Coefficient,
    c: &DenseMatrix,
    bundle: &SplittingBundle,
    opts: &SolverOptions,
    mut trace: Option<&mut MrhssTrace>,
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

    let (mut delta, used) = engine.solve_hermitian(bundle, &r)?;
    inner_total += used;

    let mut iterations = 0usize;
    let mut converged = false;
    let mut res_norm = r0_norm;

    while iterations < opts.maxit {
        let w = apply_sylvester(a, b, &delta)?;
        let beta = guarded_step(
            "mrhss",
            frobenius_inner(&r, &w)?,
            frobenius_inner(&w, &w)?,
            res_norm,
            floor,
        )?;
        x.axpy(beta, &delta);
        r.axpy(-beta, &w);
        let half_norm = frobenius_norm(&r);
        let half_snapshot = trace
            .as_deref_mut()
            .map(|_| (x.clone(), r.clone()));

        let (delta_half, used) = engine.solve_skew(bundle, &r)?;
        inner_total += used;
        let (v, used) = engine.solve_hermitian(bundle, &r)?;
        inner_total += used;
        let w_half = apply_sylvester(a, b, &delta_half)?;
        let (u, used) = engine.solve_hermitian(bundle, &w_half)?;
        inner_total += used;

        let gamma = guarded_step(
            "mrhss",
            frobenius_inner(&v, &u)?,
            frobenius_inner(&u, &u)?,
            half_norm,
            floor,
        )?;
        x.axpy(gamma, &delta_half);
        r.axpy(-gamma, &w_half);
        delta = {
            let mut d = v.clone();
            d.axpy(-gamma, &u);
            d
        };

        iterations += 1;
        res_norm = frobenius_norm(&r);
        history.push(res_norm);

        if let (Some(t), Some((x_half, r_half))) = (trace.as_deref_mut(), half_snapshot) {
            t.steps.push(MrhssStep {
                beta,
                gamma,
                half_res_norm: half_norm,
                res_norm,
                x_half,
                r_half,
                x: x.clone(),
                r: r.clone(),
                v,
                delta_next: delta.clone(),
            });
        }

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
