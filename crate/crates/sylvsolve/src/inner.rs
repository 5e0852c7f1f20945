//! Solvers for the two shifted Sylvester sub-equations every splitting step
//! needs, plus the dense Kronecker direct solver used as the small-scale
//! oracle.
//!
//! The shifted Hermitian operator is symmetric positive definite under the
//! Frobenius inner product, so it gets conjugate gradients carried out on
//! matrix-shaped iterates. The shifted skew operator is normal with spectrum
//! `alpha_hat + i mu`, so it gets restarted GMRES with a matrix-shaped
//! Arnoldi basis.

use crate::coeff::Coefficient;
use crate::dense::{frobenius_inner, frobenius_norm, kron, unvec, vec_of, DenseMatrix};
use crate::error::{Error, Result};
use crate::lu::LuFactors;
use crate::sylvester::SplittingBundle;

/// Size cap (entries of the unknown) for anything that materializes the
/// stacked Kronecker system.
pub const DIRECT_BUDGET: usize = 1000;

/// Separate, slightly larger cap for the pre-factored inner engine, sized so
/// exact inner solves cover every problem the property suites run on.
pub const INNER_DIRECT_BUDGET: usize = 2048;

/// Outcome of one inner solve.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerStats {
    pub iterations: usize,
    pub final_relative_residual: f64,
    pub converged: bool,
}

/// How the inner sub-equations of an outer splitting iteration are solved.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerSolve {
    /// CG on the Hermitian sub-equation, restarted GMRES on the skew one.
    Iterative {
        tol: f64,
        cg_maxit: usize,
        gmres_restart: usize,
        /// Maximum number of GMRES restart cycles.
        gmres_cycles: usize,
    },
    /// Factor the two stacked shifted matrices once and back-substitute;
    /// only available within [`DIRECT_BUDGET`].
    Direct,
}

impl Default for InnerSolve {
    fn default() -> Self {
        InnerSolve::Iterative {
            tol: 1e-3,
            cg_maxit: 500,
            gmres_restart: 30,
            gmres_cycles: 20,
        }
    }
}

impl InnerSolve {
    pub fn iterative(tol: f64) -> Self {
        match InnerSolve::default() {
            InnerSolve::Iterative {
                cg_maxit,
                gmres_restart,
                gmres_cycles,
                ..
            } => InnerSolve::Iterative {
                tol,
                cg_maxit,
                gmres_restart,
                gmres_cycles,
            },
            InnerSolve::Direct => unreachable!(),
        }
    }
}

/// Conjugate gradients in matrix form for
/// `H_A(alpha) D + D H_B(alpha) = R`, started from the zero matrix.
pub fn cg_hpd_sylvester(
    bundle: &SplittingBundle,
    r: &DenseMatrix,
    tol: f64,
    maxit: usize,
) -> Result<(DenseMatrix, InnerStats)> {
    let rhs_norm = frobenius_norm(r);
    let mut x = DenseMatrix::zeros(r.rows(), r.cols());
    if rhs_norm == 0.0 {
        return Ok((
            x,
            InnerStats {
                iterations: 0,
                final_relative_residual: 0.0,
                converged: true,
            },
        ));
    }
    let mut res = r.clone();
    let mut p = res.clone();
    let mut rz = frobenius_inner(&res, &res)?;
    let mut rel = 1.0;
    for it in 1..=maxit {
        let q = bundle.apply_hermitian_shifted(&p);
        let pq = frobenius_inner(&p, &q)?;
        if pq <= 0.0 {
            return Err(Error::Breakdown {
                method: "cg",
                detail: format!("non-positive curvature <P, T(P)> = {pq:e}"),
            });
        }
        let step = rz / pq;
        x.axpy(step, &p);
        res.axpy(-step, &q);
        rel = frobenius_norm(&res) / rhs_norm;
        if rel <= tol {
            return Ok((
                x,
                InnerStats {
                    iterations: it,
                    final_relative_residual: rel,
                    converged: true,
                },
            ));
        }
        let rz_next = frobenius_inner(&res, &res)?;
        let beta = rz_next / rz;
        p.scale(beta);
        p.axpy(1.0, &res);
        rz = rz_next;
    }
    Ok((
        x,
        InnerStats {
            iterations: maxit,
            final_relative_residual: rel,
            converged: false,
        },
    ))
}

/// Restarted GMRES in matrix form for
/// `S_A(alpha) D + D S_B(alpha) = R`, started from the zero matrix. The
/// Arnoldi basis lives in matrix space under the Frobenius inner product;
/// a happy breakdown is treated as exact convergence.
pub fn gmres_skew_sylvester(
    bundle: &SplittingBundle,
    r: &DenseMatrix,
    tol: f64,
    restart: usize,
    max_cycles: usize,
) -> Result<(DenseMatrix, InnerStats)> {
    let rhs_norm = frobenius_norm(r);
    let mut x = DenseMatrix::zeros(r.rows(), r.cols());
    if rhs_norm == 0.0 {
        return Ok((
            x,
            InnerStats {
                iterations: 0,
                final_relative_residual: 0.0,
                converged: true,
            },
        ));
    }
    let restart = restart.max(1);
    let mut total_steps = 0usize;
    let mut rel = 1.0;

    for _cycle in 0..max_cycles {
        let mut r0 = r.clone();
        r0.axpy(-1.0, &bundle.apply_skew_shifted(&x));
        let beta0 = frobenius_norm(&r0);
        rel = beta0 / rhs_norm;
        if rel <= tol {
            return Ok((
                x,
                InnerStats {
                    iterations: total_steps,
                    final_relative_residual: rel,
                    converged: true,
                },
            ));
        }

        let mut basis: Vec<DenseMatrix> = Vec::with_capacity(restart + 1);
        basis.push(r0.scaled(1.0 / beta0));
        let mut h = vec![vec![0.0f64; restart]; restart + 1];
        let mut g = vec![0.0f64; restart + 1];
        g[0] = beta0;
        let mut cs = vec![0.0f64; restart];
        let mut sn = vec![0.0f64; restart];

        let mut k = 0usize;
        let mut happy = false;
        while k < restart {
            let mut w = bundle.apply_skew_shifted(&basis[k]);
            for (i, b) in basis.iter().enumerate().take(k + 1) {
                h[i][k] = frobenius_inner(b, &w)?;
                w.axpy(-h[i][k], b);
            }
            h[k + 1][k] = frobenius_norm(&w);
            happy = h[k + 1][k] <= 1e-14 * rhs_norm;
            if !happy {
                basis.push(w.scaled(1.0 / h[k + 1][k]));
            }
            for i in 0..k {
                let t = cs[i] * h[i][k] + sn[i] * h[i + 1][k];
                h[i + 1][k] = -sn[i] * h[i][k] + cs[i] * h[i + 1][k];
                h[i][k] = t;
            }
            let denom = (h[k][k] * h[k][k] + h[k + 1][k] * h[k + 1][k]).sqrt();
            if denom == 0.0 {
                return Err(Error::Breakdown {
                    method: "gmres",
                    detail: "zero Givens denominator".into(),
                });
            }
            cs[k] = h[k][k] / denom;
            sn[k] = h[k + 1][k] / denom;
            h[k][k] = denom;
            h[k + 1][k] = 0.0;
            let t = cs[k] * g[k];
            g[k + 1] = -sn[k] * g[k];
            // |sn| <= 1, so the residual estimate cannot grow within a cycle
            debug_assert!(g[k + 1].abs() <= g[k].abs() * (1.0 + 1e-12));
            g[k] = t;
            k += 1;
            total_steps += 1;
            rel = g[k].abs() / rhs_norm;
            if rel <= tol || happy {
                break;
            }
        }

        // least-squares update from the triangularized Hessenberg system
        let mut y = vec![0.0f64; k];
        for i in (0..k).rev() {
            let mut acc = g[i];
            for j in (i + 1)..k {
                acc -= h[i][j] * y[j];
            }
            y[i] = acc / h[i][i];
        }
        for (i, &yi) in y.iter().enumerate() {
            x.axpy(yi, &basis[i]);
        }
        if rel <= tol || happy {
            let final_rel = {
                let mut rr = r.clone();
                rr.axpy(-1.0, &bundle.apply_skew_shifted(&x));
                frobenius_norm(&rr) / rhs_norm
            };
            return Ok((
                x,
                InnerStats {
                    iterations: total_steps,
                    final_relative_residual: final_rel,
                    converged: true,
                },
            ));
        }
    }
    Ok((
        x,
        InnerStats {
            iterations: total_steps,
            final_relative_residual: rel,
            converged: false,
        },
    ))
}

/// Materialize the stacked matrix `I_m (x) A + B^T (x) I_n`.
pub fn kron_sylvester_matrix(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    let m = b.rows();
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
    let left = kron(&DenseMatrix::identity(m), a)?;
    let right = kron(&b.transpose(), &DenseMatrix::identity(n))?;
    left.add(&right)
}

/// Direct assembly of the stacked matrix, bypassing the Kronecker-product
/// entry budget; used only by the pre-factored inner engine under its own
/// size cap.
fn assemble_stacked(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let m = b.rows();
    let nm = n * m;
    let mut k = DenseMatrix::zeros(nm, nm);
    for blk in 0..m {
        for i in 0..n {
            for j in 0..n {
                k[(blk * n + i, blk * n + j)] += a.get(i, j);
            }
        }
    }
    // (B^T (x) I_n): block (bi, bj) is B[bj, bi] * I_n
    for bi in 0..m {
        for bj in 0..m {
            let v = b.get(bj, bi);
            if v != 0.0 {
                for i in 0..n {
                    k[(bi * n + i, bj * n + i)] += v;
                }
            }
        }
    }
    k
}

/// Direct small-scale solve of `AX + XB = C` through the stacked `nm x nm`
/// system with LU and partial pivoting. Deliberately an oracle: capped at
/// [`DIRECT_BUDGET`] unknowns.
pub fn direct_kron_solve(a: &Coefficient, b: &Coefficient, c: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    let m = b.rows();
    if c.rows() != n || c.cols() != m {
        return Err(Error::ShapeMismatch {
            op: "direct_kron_solve",
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
    let stacked = kron_sylvester_matrix(&a.to_dense(), &b.to_dense())?;
    let factors = LuFactors::factor(&stacked)?;
    let x = factors.solve(&vec_of(c));
    unvec(&x, n, m)
}

/// A per-solve engine for the two sub-equations. The direct variant factors
/// the stacked shifted matrices once and reuses them for every step.
pub(crate) enum InnerEngine {
    Iterative {
        tol: f64,
        cg_maxit: usize,
        gmres_restart: usize,
        gmres_cycles: usize,
    },
    Direct {
        herm: LuFactors,
        skew: LuFactors,
        n: usize,
        m: usize,
    },
}

impl InnerEngine {
    pub(crate) fn new(bundle: &SplittingBundle, cfg: &InnerSolve) -> Result<Self> {
        match cfg {
            InnerSolve::Iterative {
                tol,
                cg_maxit,
                gmres_restart,
                gmres_cycles,
            } => Ok(InnerEngine::Iterative {
                tol: *tol,
                cg_maxit: *cg_maxit,
                gmres_restart: *gmres_restart,
                gmres_cycles: *gmres_cycles,
            }),
            InnerSolve::Direct => {
                let n = bundle.n();
                let m = bundle.m();
                if n * m > INNER_DIRECT_BUDGET {
                    return Err(Error::OracleBudget {
                        entries: n * m,
                        budget: INNER_DIRECT_BUDGET,
                    });
                }
                let (ha, hb, sa, sb) = bundle.shifted_dense_parts()?;
                let herm = LuFactors::factor(&assemble_stacked(&ha, &hb))?;
                let skew = LuFactors::factor(&assemble_stacked(&sa, &sb))?;
                Ok(InnerEngine::Direct { herm, skew, n, m })
            }
        }
    }

    /// Solve the shifted Hermitian sub-equation against `r`; returns the
    /// update and the number of inner iterations spent.
    pub(crate) fn solve_hermitian(
        &self,
        bundle: &SplittingBundle,
        r: &DenseMatrix,
    ) -> Result<(DenseMatrix, usize)> {
        match self {
            InnerEngine::Iterative { tol, cg_maxit, .. } => {
                let (x, stats) = cg_hpd_sylvester(bundle, r, *tol, *cg_maxit)?;
                Ok((x, stats.iterations))
            }
            InnerEngine::Direct { herm, n, m, .. } => {
                let x = herm.solve(&vec_of(r));
                Ok((unvec(&x, *n, *m)?, 0))
            }
        }
    }

    /// Solve the shifted skew sub-equation against `r`.
    pub(crate) fn solve_skew(
        &self,
        bundle: &SplittingBundle,
        r: &DenseMatrix,
    ) -> Result<(DenseMatrix, usize)> {
        match self {
            InnerEngine::Iterative {
                tol,
                gmres_restart,
                gmres_cycles,
                ..
            } => {
                let (x, stats) = gmres_skew_sylvester(bundle, r, *tol, *gmres_restart, *gmres_cycles)?;
                Ok((x, stats.iterations))
            }
            InnerEngine::Direct { skew, n, m, .. } => {
                let x = skew.solve(&vec_of(r));
                Ok((unvec(&x, *n, *m)?, 0))
            }
        }
    }
}
