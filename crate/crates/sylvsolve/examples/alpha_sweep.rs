//! The minimal-residual iteration converges for any positive shift; sweep
//! the half-shift across four decades and watch the iteration count move.
//!
//! ```bash
//! cargo run --release --example alpha_sweep
//! ```

use sylvsolve::{gen_example1, mrhss_solve, select_alpha, SolverOptions};

fn main() -> sylvsolve::Result<()> {
    let problem = gen_example1(16, 16, 0.01)?;
    let selected = select_alpha(problem.a(), problem.b())?;
    let opts = SolverOptions {
        maxit: 5000,
        ..SolverOptions::direct_inner()
    };

    println!("{:>12}  {:>10}  {:>14}", "alpha", "iterations", "final res-norm");
    for i in 0..20 {
        let alpha = 10f64.powf(-2.0 + 3.0 * i as f64 / 19.0);
        let (_, report) = mrhss_solve(&problem, alpha, &opts)?;
        let marker = if (alpha / selected - 1.0).abs() < 0.2 { " <- near selected" } else { "" };
        println!(
            "{alpha:>12.5}  {:>10}  {:>14.4e}{marker}",
            report.iterations, report.final_residual
        );
    }
    println!("selected half-shift would be {selected:.5}");
    Ok(())
}
