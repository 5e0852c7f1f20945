//! Splitting preconditioners: run a few sweeps of HSS or minimal-residual
//! HSS from the zero matrix as the approximate inverse inside a Krylov
//! method.
//!
//! The minimal-residual variant is nonlinear in its input, so the resulting
//! preconditioned Krylov method is formally a flexible one; the BiCGSTAB
//! driver's breakdown and divergence detection covers the risk.

use super::hss::hss_core;
use super::mrhss::mrhss_core;
use super::SolverOptions;
use crate::coeff::Coefficient;
use crate::dense::DenseMatrix;
use crate::error::Result;
use crate::inner::InnerSolve;
use crate::sylvester::{build_splitting, SplittingBundle, SylvesterProblem};

/// Approximate solve `Z ~ L^-1(R)` for the Sylvester operator.
pub trait SylvesterPreconditioner {
    fn apply(&self, r: &DenseMatrix) -> Result<DenseMatrix>;
}

/// Which splitting iteration backs the preconditioner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingKind {
    Hss,
    Mrhss,
}

/// Preconditioner running `kind` sweeps from the zero matrix until the sweep
/// residual drops below `eps` relative or `max_sweeps` is reached.
#[derive(Debug, Clone)]
pub struct SplittingPreconditioner {
    kind: SplittingKind,
    a: Coefficient,
    b: Coefficient,
    bundle: SplittingBundle,
    eps: f64,
    max_sweeps: usize,
    inner: InnerSolve,
}

impl SplittingPreconditioner {
    /// Replace the inner-solve configuration of the sweeps (default: the
    /// iterative solvers at tolerance 1e-3).
    pub fn with_inner(mut self, inner: InnerSolve) -> Self {
        self.inner = inner;
        self
    }
}

/// Build a splitting preconditioner for `problem` with half-shift `alpha`.
/// Defaults used by the benchmark driver: `eps = 1e-3`, `max_sweeps = 10`.
pub fn splitting_preconditioner(
    kind: SplittingKind,
    problem: &SylvesterProblem,
    alpha: f64,
    eps: f64,
    max_sweeps: usize,
) -> Result<SplittingPreconditioner> {
    let bundle = build_splitting(problem.a(), problem.b(), alpha)?;
    Ok(SplittingPreconditioner {
        kind,
        a: problem.a().clone(),
        b: problem.b().clone(),
        bundle,
        eps,
        max_sweeps,
        inner: InnerSolve::default(),
    })
}

impl SylvesterPreconditioner for SplittingPreconditioner {
    fn apply(&self, r: &DenseMatrix) -> Result<DenseMatrix> {
        let opts = SolverOptions {
            outer_tol: self.eps,
            maxit: self.max_sweeps,
            inner: self.inner.clone(),
        };
        let (z, _) = match self.kind {
            SplittingKind::Mrhss => mrhss_core(&self.a, &self.b, r, &self.bundle, &opts, None)?,
            SplittingKind::Hss => hss_core(&self.a, &self.b, r, &self.bundle, &opts)?,
        };
        Ok(z)
    }
}
