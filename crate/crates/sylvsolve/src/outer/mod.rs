//! Outer iterations: the minimal-residual HSS method, the stationary HSS
//! baseline, BiCGSTAB over matrix space, splitting preconditioners, and the
//! vec-space reference implementation used as an oracle.

mod bicgstab;
mod hss;
mod mrhss;
mod precond;
mod vec_reference;

pub use bicgstab::bicgstab_solve;
pub use hss::hss_solve;
pub use mrhss::{mrhss_solve, mrhss_solve_traced, MrhssStep, MrhssTrace};
pub use precond::{splitting_preconditioner, SplittingKind, SplittingPreconditioner, SylvesterPreconditioner};
pub use vec_reference::{mrhss_vec_reference, VecReferenceReport};

use crate::error::{Error, Result};
use crate::inner::InnerSolve;
use std::time::Duration;

/// What an outer solve reports back: convergence flag, iteration count, the
/// Frobenius norms `||R^(k)||_F` per outer iteration (entry 0 is the initial
/// residual), the final residual norm, wall time of the iteration loop, and
/// the total number of inner iterations spent.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub converged: bool,
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    pub final_residual: f64,
    pub wall_time: Duration,
    pub inner_iteration_total: usize,
}

/// Shared knobs of the outer iterations. The default stopping rule is
/// `||R^(k)||_F <= 1e-8 ||R^(0)||_F` with at most 10000 outer iterations and
/// iterative inner solves at tolerance 1e-3.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub outer_tol: f64,
    pub maxit: usize,
    pub inner: InnerSolve,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            outer_tol: 1e-8,
            maxit: 10000,
            inner: InnerSolve::default(),
        }
    }
}

impl SolverOptions {
    /// Same stopping rule, exact (factorized) inner solves.
    pub fn direct_inner() -> Self {
        Self {
            inner: InnerSolve::Direct,
            ..Self::default()
        }
    }
}

/// Minimal-residual step length `num / den` with the stagnation guard. A zero
/// denominator means the search direction vanished: benign (step 0) when the
/// residual already sits at the convergence floor, fatal otherwise.
pub(crate) fn guarded_step(
    method: &'static str,
    num: f64,
    den: f64,
    res_norm: f64,
    floor: f64,
) -> Result<f64> {
    if den == 0.0 {
        if res_norm <= floor {
            return Ok(0.0);
        }
        return Err(Error::Stagnation {
            method,
            residual: res_norm,
        });
    }
    Ok(num / den)
}
