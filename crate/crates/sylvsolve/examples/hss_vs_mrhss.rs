//! Compare the stationary HSS baseline against the minimal-residual variant
//! across problem sizes, and print the comparison as a markdown table.
//!
//! ```bash
//! cargo run --release --example hss_vs_mrhss
//! ```

use std::io::stdout;
use sylvsolve::{emit_table, run_experiment, Method, ProblemSpec, RunConfig, TableFormat};

fn main() -> sylvsolve::Result<()> {
    let cfg = RunConfig::default();
    let methods = [Method::Hss, Method::Mrhss];

    let mut rows = Vec::new();
    println!("shifted tridiagonal family:");
    for size in [8usize, 16, 32, 64] {
        rows.extend(run_experiment(
            &ProblemSpec::example1(size, size, 0.01),
            &methods,
            &cfg,
        ));
    }
    emit_table(&rows, TableFormat::Markdown, &mut stdout())?;

    println!("\ntriangular family (r = 0.01, t = 1):");
    let mut rows = Vec::new();
    for size in [8usize, 16, 32, 64] {
        rows.extend(run_experiment(
            &ProblemSpec::example2(size, 0.01, 1.0),
            &methods,
            &cfg,
        ));
    }
    emit_table(&rows, TableFormat::Markdown, &mut stdout())?;
    Ok(())
}
