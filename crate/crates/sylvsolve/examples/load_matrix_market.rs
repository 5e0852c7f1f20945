//! Load a Matrix Market file, report its stats, and (for square matrices)
//! run preconditioned BiCGSTAB on the induced Sylvester problem with
//! `B = tridiag(-1, 4, -2)` of order 8.
//!
//! ```bash
//! cargo run --release --example load_matrix_market -- data/sherman3.mtx
//! ```

use std::env;
use sylvsolve::{
    bicgstab_solve, gen_example3, load_matrix_market, select_alpha, splitting_preconditioner,
    SolverOptions, SplittingKind,
};

fn main() -> sylvsolve::Result<()> {
    let path = match env::args().nth(1) {
        Some(p) => p,
        None => {
            eprintln!("usage: load_matrix_market <file.mtx>");
            eprintln!("fetch the benchmark matrix first: scripts/fetch_sherman3.sh");
            std::process::exit(2);
        }
    };

    let matrix = load_matrix_market(&path)?;
    println!(
        "{path}: {} x {} with {} stored entries",
        matrix.rows(),
        matrix.cols(),
        matrix.nnz()
    );
    if !matrix.is_square() {
        println!("matrix is rectangular; stopping after the stats");
        return Ok(());
    }

    let problem = gen_example3(&path)?;
    println!(
        "Sylvester problem: X is {} x {}, right-hand side has the all-ones solution",
        problem.n(),
        problem.m()
    );

    let alpha = match select_alpha(problem.a(), problem.b()) {
        Ok(a) => {
            println!("selected half-shift alpha = {a:.6}");
            a
        }
        Err(e) => {
            println!("shift selection failed ({e}); falling back to alpha = 1");
            1.0
        }
    };

    let pc = splitting_preconditioner(SplittingKind::Mrhss, &problem, alpha, 1e-3, 10)?;
    let opts = SolverOptions {
        maxit: 100,
        ..SolverOptions::default()
    };
    let (_, report) = bicgstab_solve(&problem, Some(&pc), &opts)?;
    println!(
        "mrhss-preconditioned bicgstab: converged = {}, {} iterations, res-norm {:.4e}, {:.1} ms",
        report.converged,
        report.iterations,
        report.final_residual,
        report.wall_time.as_secs_f64() * 1e3
    );
    Ok(())
}
