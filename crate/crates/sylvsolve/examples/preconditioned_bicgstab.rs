//! Use a few sweeps of the splitting iterations as preconditioners inside
//! BiCGSTAB and compare against the unpreconditioned run.
//!
//! ```bash
//! cargo run --release --example preconditioned_bicgstab
//! ```

use sylvsolve::{
    bicgstab_solve, gen_example2, select_alpha, splitting_preconditioner, SolveReport,
    SolverOptions, SplittingKind,
};

fn show(label: &str, report: &SolveReport) {
    let outcome = if report.converged {
        format!("converged in {} iterations", report.iterations)
    } else if report.final_residual.is_nan() {
        format!("diverged after {} iterations", report.iterations)
    } else {
        format!("no convergence in {} iterations", report.iterations)
    };
    println!(
        "{label:<18} {outcome}, res-norm {:.4e}, {:.2} ms",
        report.final_residual,
        report.wall_time.as_secs_f64() * 1e3
    );
}

fn main() -> sylvsolve::Result<()> {
    let problem = gen_example2(32, 0.01, 1.0)?;
    let alpha = select_alpha(problem.a(), problem.b())?;
    let opts = SolverOptions::default();

    let (_, plain) = bicgstab_solve(&problem, None, &opts)?;
    show("bicgstab", &plain);

    for (kind, label) in [
        (SplittingKind::Hss, "hss-bicgstab"),
        (SplittingKind::Mrhss, "mrhss-bicgstab"),
    ] {
        let pc = splitting_preconditioner(kind, &problem, alpha, 1e-3, 10)?;
        let (_, report) = bicgstab_solve(&problem, Some(&pc), &opts)?;
        show(label, &report);
    }
    Ok(())
}
