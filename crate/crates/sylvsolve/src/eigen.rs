//! Extreme-eigenvalue estimation for symmetric operators: cyclic Jacobi for
//! small dense matrices, Lanczos with full reorthogonalization above that.

use crate::coeff::Coefficient;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Order at or below which the dense Jacobi path is used.
pub const DENSE_EIG_MAX: usize = 64;

/// Entrywise asymmetry tolerated before an input is rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;

const LANCZOS_MAX_STEPS: usize = 50;
const LANCZOS_MAX_RESTARTS: usize = 100;

/// Eigenvalues (ascending) and eigenvectors (matching columns) of a dense
/// symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = DenseMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m.get(p, q).abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).partial_cmp(&m.get(j, j)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let eigenvectors =
        DenseMatrix::from_fn(n, n, |i, j| v.get(i, order[j])).expect("rotation output is finite");
    Ok((eigenvalues, eigenvectors))
}

/// Eigenvalues only, ascending.
pub fn symmetric_eigenvalues(a: &DenseMatrix) -> Result<Vec<f64>> {
    symmetric_eigen(a).map(|(vals, _)| vals)
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

struct LanczosRun {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    basis: Vec<Vec<f64>>,
    /// Norm of the residual of the last Arnoldi step (0 at an exact
    /// invariant-subspace breakdown).
    final_beta: f64,
    invariant: bool,
}

fn lanczos_tridiagonalize(h: &Coefficient, start: &[f64], max_steps: usize) -> LanczosRun {
    let n = start.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_steps);
    let mut alphas = Vec::with_capacity(max_steps);
    let mut betas = Vec::with_capacity(max_steps);
    let mut v: Vec<f64> = start.to_vec();
    let nv = norm(&v);
    for x in &mut v {
        *x /= nv;
    }
    basis.push(v);
    let mut invariant = false;
    let mut final_beta = 0.0;
    let mut scale = 0.0_f64;

    for j in 0..max_steps {
        let vj = basis[j].clone();
        let mut w = h.matvec(&vj);
        let alpha = dot(&vj, &w);
        scale = scale.max(alpha.abs());
        for (wi, vi) in w.iter_mut().zip(&vj) {
            *wi -= alpha * vi;
        }
        if j > 0 {
            let beta_prev = betas[j - 1];
            for (wi, vi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= beta_prev * vi;
            }
        }
        // full reorthogonalization against the whole basis
        for b in &basis {
            let proj = dot(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
        alphas.push(alpha);
        let beta = norm(&w);
        scale = scale.max(beta);
        if beta <= 1e-13 * scale.max(f64::MIN_POSITIVE) {
            // exact invariant subspace for this start vector
            invariant = true;
            final_beta = 0.0;
            break;
        }
        final_beta = beta;
        if j + 1 == max_steps || basis.len() == n {
            break;
        }
        betas.push(beta);
        for wi in &mut w {
            *wi /= beta;
        }
        basis.push(w);
    }

    LanczosRun {
        alphas,
        betas,
        basis,
        final_beta,
        invariant,
    }
}

fn tridiagonal_from(alphas: &[f64], betas: &[f64]) -> DenseMatrix {
    let k = alphas.len();
    DenseMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alphas[i]
        } else if j + 1 == i {
            betas[j]
        } else if i + 1 == j {
            betas[i]
        } else {
            0.0
        }
    })
    .expect("tridiagonal assembly is finite")
}

/// One Lanczos cycle digested into Ritz data.
struct RitzCycle {
    theta: Vec<f64>,
    svec: DenseMatrix,
    basis: Vec<Vec<f64>>,
    final_beta: f64,
    exact: bool,
}

fn ritz_cycle(h: &Coefficient, start: &[f64], max_steps: usize) -> Result<RitzCycle> {
    let run = lanczos_tridiagonalize(h, start, max_steps);
    let t = tridiagonal_from(&run.alphas, &run.betas);
    let (theta, svec) = symmetric_eigen(&t)?;
    let exact = run.invariant || run.basis.len() == start.len();
    Ok(RitzCycle {
        theta,
        svec,
        basis: run.basis,
        final_beta: run.final_beta,
        exact,
    })
}

impl RitzCycle {
    /// Residual bound `beta_k |s_{k,idx}|` of the Ritz pair `idx`.
    fn bound(&self, idx: usize) -> f64 {
        let k = self.theta.len();
        (self.final_beta * self.svec.get(k - 1, idx)).abs()
    }

    fn ritz_vector(&self, idx: usize) -> Vec<f64> {
        let n = self.basis[0].len();
        let mut v = vec![0.0; n];
        for (j, b) in self.basis.iter().enumerate() {
            let s = self.svec.get(j, idx);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += s * bi;
            }
        }
        v
    }
}

/// Refine one spectral end by restarting Lanczos from its Ritz vector.
///
/// Converged when either the residual bound clears `tol * scale` (rigorous)
/// or the extreme Ritz value, which moves monotonically outward across
/// restarts, stabilizes well below that threshold for two consecutive cycles
/// (the Ritz value error is quadratic in the residual bound, so it settles
/// long before the bound does on spectra with clustered edges).
fn refine_end(
    h: &Coefficient,
    first: &RitzCycle,
    low_end: bool,
    tol: f64,
    scale: f64,
    max_steps: usize,
) -> Result<f64> {
    let pick = |c: &RitzCycle| if low_end { 0 } else { c.theta.len() - 1 };
    let mut estimate = first.theta[pick(first)];
    let mut bound = first.bound(pick(first));
    let mut start = first.ritz_vector(pick(first));
    let stable_threshold = 0.05 * tol * scale;

    let mut stable_cycles = 0;
    let mut restarts = 0;
    while bound > tol * scale && stable_cycles < 2 && restarts < LANCZOS_MAX_RESTARTS {
        let c = ritz_cycle(h, &start, max_steps)?;
        let idx = pick(&c);
        let next = c.theta[idx];
        if (next - estimate).abs() <= stable_threshold {
            stable_cycles += 1;
        } else {
            stable_cycles = 0;
        }
        estimate = next;
        bound = c.bound(idx);
        if c.exact {
            return Ok(estimate);
        }
        start = c.ritz_vector(idx);
        restarts += 1;
    }
    if bound > tol * scale && stable_cycles < 2 {
        return Err(Error::EigsUnconverged {
            steps: LANCZOS_MAX_RESTARTS * max_steps,
            bound,
        });
    }
    Ok(estimate)
}

fn lanczos_extreme(h: &Coefficient, tol: f64) -> Result<(f64, f64)> {
    let n = h.rows();
    let max_steps = n.min(LANCZOS_MAX_STEPS);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f_c0de);
    let start: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();

    let first = ritz_cycle(h, &start, max_steps)?;
    let k = first.theta.len();
    if first.exact {
        return Ok((first.theta[0], first.theta[k - 1]));
    }
    // relative-accuracy scale: the spectral radius estimate from the warmup
    let scale = first.theta[0]
        .abs()
        .max(first.theta[k - 1].abs())
        .max(f64::MIN_POSITIVE);
    let lo = refine_end(h, &first, true, tol, scale, max_steps)?;
    let hi = refine_end(h, &first, false, tol, scale, max_steps)?;
    Ok((lo, hi))
}

/// Smallest and largest eigenvalue of a symmetric operator. Dense Jacobi is
/// used up to order [`DENSE_EIG_MAX`] (exact reference), Lanczos with full
/// reorthogonalization and restarts above.
pub fn extreme_eigs_sym(h: &Coefficient, tol: f64) -> Result<(f64, f64)> {
    if !h.is_square() {
        return Err(Error::NonSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let asym = h.max_asymmetry()?;
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    let n = h.rows();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if n <= DENSE_EIG_MAX {
        let vals = symmetric_eigenvalues(&h.to_dense())?;
        Ok((vals[0], vals[n - 1]))
    } else {
        lanczos_extreme(h, tol)
    }
}
