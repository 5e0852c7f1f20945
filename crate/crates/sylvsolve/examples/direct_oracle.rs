//! The small-scale oracles: the dense Kronecker direct solver and the
//! stacked-system reference iteration, cross-checked against the matrix-form
//! solver on one small problem.
//!
//! ```bash
//! cargo run --release --example direct_oracle
//! ```

use sylvsolve::{
    direct_kron_solve, frobenius_norm, gen_example1, mrhss_solve, mrhss_vec_reference,
    select_alpha, residual, SolverOptions,
};

fn main() -> sylvsolve::Result<()> {
    let problem = gen_example1(8, 8, 0.01)?;
    let alpha = select_alpha(problem.a(), problem.b())?;

    // direct Kronecker solve: materializes the stacked 64x64 system
    let x_direct = direct_kron_solve(problem.a(), problem.b(), problem.c())?;
    let res = residual(&problem, &x_direct)?;
    println!(
        "direct solve: residual {:.3e} relative to ||C|| = {:.3e}",
        frobenius_norm(&res) / frobenius_norm(problem.c()),
        frobenius_norm(problem.c())
    );

    // matrix-form iteration with factorized inner solves
    let opts = SolverOptions {
        outer_tol: 1e-12,
        maxit: 20,
        ..SolverOptions::direct_inner()
    };
    let (_, report) = mrhss_solve(&problem, alpha, &opts)?;

    // stacked-system reference iteration, same shift
    let (_, vec_report) = mrhss_vec_reference(
        &problem.a().to_dense(),
        &problem.b().to_dense(),
        problem.c(),
        2.0 * alpha,
        1e-12,
        20,
    )?;

    println!("residual histories (matrix form vs stacked reference):");
    let mut worst: f64 = 0.0;
    for (k, (a, b)) in report
        .residual_history
        .iter()
        .zip(&vec_report.residual_history)
        .enumerate()
    {
        let dev = (a - b).abs() / b.max(f64::MIN_POSITIVE);
        worst = worst.max(dev);
        println!("  k = {k:2}: {a:.10e} vs {b:.10e} (rel dev {dev:.2e})");
    }
    println!("largest relative deviation: {worst:.3e}");
    Ok(())
}
