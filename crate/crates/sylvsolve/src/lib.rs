//! Iterative solvers for the continuous Sylvester equation `AX + XB = C`.
//!
//! The crate provides:
//!
//! - the minimal-residual Hermitian/skew-Hermitian splitting iteration
//!   ([`mrhss_solve`]), which augments each HSS half-step with an exact line
//!   search over the step length;
//! - the stationary HSS baseline ([`hss_solve`]);
//! - BiCGSTAB over matrix space ([`bicgstab_solve`]) with splitting
//!   preconditioners built from either iteration
//!   ([`splitting_preconditioner`]);
//! - a dense Kronecker-space direct solver ([`direct_kron_solve`]) and a
//!   stacked-system reference iteration ([`mrhss_vec_reference`]), both
//!   deliberately capped at small sizes and used as oracles;
//! - generators for three benchmark problem families ([`gen_example1`],
//!   [`gen_example2`], [`gen_example3`]) plus Matrix Market ingestion
//!   ([`load_matrix_market`]);
//! - an experiment harness ([`run_experiment`], [`emit_table`]) backing the
//!   `sylvbench` binary.
//!
//! Start with the runnable examples: `cargo run --example solve_example1`.

mod bench;
mod coeff;
mod dense;
mod eigen;
mod error;
mod inner;
mod lu;
mod market;
mod outer;
mod problems;
mod sparse;
mod sylvester;

pub use bench::{emit_table, parse_csv, run_experiment, ExperimentRow, Method, RunConfig, TableFormat};
pub use coeff::{gemm, Coefficient};
pub use dense::{
    frobenius_inner, frobenius_norm, hermitian_skew_split, kron, tridiag, unvec, vec_of,
    DenseMatrix, KRON_BUDGET,
};
pub use eigen::{extreme_eigs_sym, symmetric_eigen, symmetric_eigenvalues, DENSE_EIG_MAX};
pub use error::{Error, Result};
pub use inner::{
    cg_hpd_sylvester, direct_kron_solve, gmres_skew_sylvester, kron_sylvester_matrix, InnerSolve,
    InnerStats, DIRECT_BUDGET, INNER_DIRECT_BUDGET,
};
pub use lu::LuFactors;
pub use market::{load_matrix_market, parse_matrix_market};
pub use outer::{
    bicgstab_solve, hss_solve, mrhss_solve, mrhss_solve_traced, mrhss_vec_reference,
    splitting_preconditioner, MrhssStep, MrhssTrace, SolveReport, SolverOptions, SplittingKind,
    SplittingPreconditioner, SylvesterPreconditioner, VecReferenceReport,
};
pub use problems::{
    gen_example1, gen_example2, gen_example3, Family, ProblemSpec, RhsMode, EXTERNAL_B_ORDER,
};
pub use sparse::{hermitian_skew_split_sparse, SparseCsr};
pub use sylvester::{
    apply_sylvester, build_splitting, hermitian_part_extent, residual, select_alpha,
    SplittingBundle, SylvesterProblem,
};
