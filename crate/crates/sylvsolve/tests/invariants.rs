//! Cross-module invariants: splitting algebra, Kronecker/vec consistency,
//! spectral identities, and consistency of the iteration recurrences.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sylvsolve::{
    apply_sylvester, build_splitting, direct_kron_solve, extreme_eigs_sym, frobenius_norm,
    hermitian_skew_split, kron, kron_sylvester_matrix, mrhss_solve_traced, select_alpha,
    symmetric_eigenvalues, unvec, vec_of, cg_hpd_sylvester, gmres_skew_sylvester, Coefficient,
    DenseMatrix, ProblemSpec, SolverOptions, SylvesterProblem,
};

fn random_dense(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, m, |_, _| rng.gen::<f64>() - 0.5).unwrap()
}

/// Random coefficient with positive-definite symmetric part.
fn random_pd(rng: &mut ChaCha8Rng, n: usize) -> Coefficient {
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, 0.3 * (rng.gen::<f64>() - 0.5));
        }
    }
    for i in 0..n {
        let v = a.get(i, i);
        a.set(i, i, v + 1.2 + rng.gen::<f64>());
    }
    a.into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn split_reconstructs_and_has_exact_symmetry(
        n in 1usize..7,
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_dense(&mut rng, n, n);
        let (h, s) = hermitian_skew_split(&a).unwrap();

        let h_asym = frobenius_norm(&h.sub(&h.transpose()).unwrap());
        let s_sym = frobenius_norm(&s.add(&s.transpose()).unwrap());
        prop_assert_eq!(h_asym, 0.0);
        prop_assert_eq!(s_sym, 0.0);

        let back = h.add(&s).unwrap();
        let drift = frobenius_norm(&back.sub(&a).unwrap());
        prop_assert!(drift <= 1e-15 * frobenius_norm(&a));
    }

    #[test]
    fn vec_norm_matches_frobenius_norm(
        n in 1usize..7,
        m in 1usize..7,
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_dense(&mut rng, n, m);
        let v = vec_of(&x);
        let vnorm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        let fnorm = frobenius_norm(&x);
        prop_assert!((vnorm - fnorm).abs() <= 1e-15 * fnorm.max(1e-300));
        prop_assert_eq!(unvec(&v, n, m).unwrap(), x);
    }
}

#[test]
fn kron_vec_identity_on_random_instances() {
    // vec(A X B^T) = (B kron A) vec(X)
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=6);
        let a = random_dense(&mut rng, n, n);
        let b = random_dense(&mut rng, m, m);
        let x = random_dense(&mut rng, n, m);

        let axbt = a.matmul(&x).unwrap().matmul(&b.transpose()).unwrap();
        let lhs = vec_of(&axbt);
        let rhs = kron(&b, &a).unwrap().matvec(&vec_of(&x));
        let scale = lhs.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dev: f64 = lhs
            .iter()
            .zip(&rhs)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt();
        assert!(dev <= 1e-13 * scale.max(1e-300), "deviation {dev:e}");
    }
}

#[test]
fn sylvester_operator_matches_kronecker_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_dense(&mut rng, 4, 4);
    let b = random_dense(&mut rng, 3, 3);
    let x = random_dense(&mut rng, 4, 3);

    let ca: Coefficient = a.clone().into();
    let cb: Coefficient = b.clone().into();
    let lhs = vec_of(&apply_sylvester(&ca, &cb, &x).unwrap());
    let rhs = kron_sylvester_matrix(&a, &b).unwrap().matvec(&vec_of(&x));
    let scale = lhs.iter().map(|v| v * v).sum::<f64>().sqrt();
    let dev: f64 = lhs
        .iter()
        .zip(&rhs)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt();
    assert!(dev <= 1e-13 * scale, "deviation {dev:e}");
}

#[test]
fn extreme_eigs_bracket_rayleigh_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for &n in &[6usize, 30, 90] {
        // symmetric random matrix
        let mut h = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rng.gen::<f64>() - 0.5;
                h.set(i, j, v);
                h.set(j, i, v);
            }
        }
        let coeff: Coefficient = h.clone().into();
        let tol = 1e-8;
        let (lo, hi) = extreme_eigs_sym(&coeff, tol).unwrap();
        let slack = tol * hi.abs().max(lo.abs()).max(1.0) + 1e-12;
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let hx = h.matvec(&x);
            let num: f64 = x.iter().zip(&hx).map(|(p, q)| p * q).sum();
            let den: f64 = x.iter().map(|p| p * p).sum();
            let rayleigh = num / den;
            assert!(
                lo - slack <= rayleigh && rayleigh <= hi + slack,
                "n = {n}: Rayleigh {rayleigh} outside [{lo}, {hi}]"
            );
        }
    }
}

#[test]
fn stacked_hermitian_spectrum_is_pairwise_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let a = random_pd(&mut rng, 4);
    let b = random_pd(&mut rng, 3);
    let (h_a, _) = a.split().unwrap();
    let (h_b, _) = b.split().unwrap();
    let ea = symmetric_eigenvalues(&h_a.to_dense()).unwrap();
    let eb = symmetric_eigenvalues(&h_b.to_dense()).unwrap();
    let mut sums: Vec<f64> = ea
        .iter()
        .flat_map(|x| eb.iter().map(move |y| x + y))
        .collect();
    sums.sort_by(|p, q| p.partial_cmp(q).unwrap());

    let stacked = kron_sylvester_matrix(&a.to_dense(), &b.to_dense()).unwrap();
    let (h, _) = hermitian_skew_split(&stacked).unwrap();
    let spectrum = symmetric_eigenvalues(&h).unwrap();

    assert_eq!(spectrum.len(), sums.len());
    let scale = sums.last().unwrap().abs();
    for (got, expect) in spectrum.iter().zip(&sums) {
        assert!(
            (got - expect).abs() <= 1e-10 * scale,
            "eigenvalue {got} vs pairwise sum {expect}"
        );
    }
}

#[test]
fn inner_solvers_agree_with_direct_oracle_up_to_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..6 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(2..=8);
        let a = random_pd(&mut rng, n);
        let b = random_pd(&mut rng, m);
        let bundle = build_splitting(&a, &b, 0.4 + rng.gen::<f64>()).unwrap();
        let r = random_dense(&mut rng, n, m);
        let tol = 1e-9;

        let (ha, hb, sa, sb) = bundle.shifted_dense_parts().unwrap();

        let (x_cg, stats) = cg_hpd_sylvester(&bundle, &r, tol, 500).unwrap();
        assert!(stats.converged);
        let oracle_h = direct_kron_solve(&ha.into(), &hb.into(), &r).unwrap();
        let dev = frobenius_norm(&x_cg.sub(&oracle_h).unwrap()) / frobenius_norm(&oracle_h);
        assert!(dev <= 10.0 * tol, "cg deviation {dev:e}");

        let (x_gm, stats) = gmres_skew_sylvester(&bundle, &r, tol, 30, 20).unwrap();
        assert!(stats.converged);
        let oracle_s = direct_kron_solve(&sa.into(), &sb.into(), &r).unwrap();
        let dev = frobenius_norm(&x_gm.sub(&oracle_s).unwrap()) / frobenius_norm(&oracle_s);
        assert!(dev <= 10.0 * tol, "gmres deviation {dev:e}");
    }
}

#[test]
fn cg_energy_error_decreases_monotonically() {
    // the quantity CG minimizes per step is the operator-norm (energy) error;
    // observe it against the direct oracle by truncating the iteration
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let a = random_pd(&mut rng, 5);
    let b = random_pd(&mut rng, 4);
    let bundle = build_splitting(&a, &b, 0.7).unwrap();
    let r = random_dense(&mut rng, 5, 4);

    let (ha, hb, _, _) = bundle.shifted_dense_parts().unwrap();
    let exact = direct_kron_solve(&ha.into(), &hb.into(), &r).unwrap();

    let energy = |x: &DenseMatrix| {
        let err = x.sub(&exact).unwrap();
        let t_err = bundle.apply_hermitian_shifted(&err);
        sylvsolve::frobenius_inner(&err, &t_err).unwrap()
    };

    let mut prev = f64::INFINITY;
    for maxit in 1..=12 {
        let (x, _) = cg_hpd_sylvester(&bundle, &r, 1e-30, maxit).unwrap();
        let e = energy(&x);
        assert!(
            e <= prev * (1.0 + 1e-10),
            "energy error grew at step {maxit}: {e} > {prev}"
        );
        prev = e;
    }
}

#[test]
fn shifted_operator_kronecker_identities() {
    // vec(H_A(a) X + X H_B(a)) = (ahat I + H) vec(X), and the skew analog;
    // the skew case encodes the transpose sign handling.
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..20 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=6);
        let a = random_dense(&mut rng, n, n);
        let b = random_dense(&mut rng, m, m);
        let alpha = 0.1 + rng.gen::<f64>();
        let ca: Coefficient = a.clone().into();
        let cb: Coefficient = b.clone().into();
        let bundle = build_splitting(&ca, &cb, alpha).unwrap();

        let stacked = kron_sylvester_matrix(&a, &b).unwrap();
        let (h, s) = hermitian_skew_split(&stacked).unwrap();
        let h_shift = h.shifted(bundle.alpha_hat).unwrap();
        let s_shift = s.shifted(bundle.alpha_hat).unwrap();

        let x = random_dense(&mut rng, n, m);
        let herm_lhs = vec_of(&bundle.apply_hermitian_shifted(&x));
        let herm_rhs = h_shift.matvec(&vec_of(&x));
        let skew_lhs = vec_of(&bundle.apply_skew_shifted(&x));
        let skew_rhs = s_shift.matvec(&vec_of(&x));

        let norm = |v: &[f64]| v.iter().map(|p| p * p).sum::<f64>().sqrt();
        let dev = |l: &[f64], r: &[f64]| {
            l.iter()
                .zip(r)
                .map(|(p, q)| (p - q) * (p - q))
                .sum::<f64>()
                .sqrt()
        };
        assert!(dev(&herm_lhs, &herm_rhs) <= 1e-12 * norm(&herm_rhs).max(1e-300));
        assert!(dev(&skew_lhs, &skew_rhs) <= 1e-12 * norm(&skew_rhs).max(1e-300));
    }
}

#[test]
fn mrhss_recurrences_are_consistent_with_fresh_computation() {
    // residual recurrences match recomputed residuals, and the direction
    // update matches a fresh Hermitian-shifted solve of the new residual
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    let a = random_pd(&mut rng, 6);
    let b = random_pd(&mut rng, 5);
    let c = random_dense(&mut rng, 6, 5);
    let problem = SylvesterProblem::new(a.clone(), b.clone(), c).unwrap();
    let alpha = select_alpha(&a, &b).unwrap();

    let opts = SolverOptions {
        outer_tol: 1e-12,
        maxit: 25,
        ..SolverOptions::direct_inner()
    };
    let (_, report, trace) = mrhss_solve_traced(&problem, alpha, &opts).unwrap();
    assert!(!trace.steps.is_empty());

    let bundle = build_splitting(&a, &b, alpha).unwrap();
    let (ha, hb, _, _) = bundle.shifted_dense_parts().unwrap();
    let ha: Coefficient = ha.into();
    let hb: Coefficient = hb.into();

    for step in &trace.steps {
        // recurrence residual vs fresh residual at the half step
        let fresh_half = sylvsolve::residual(&problem, &step.x_half).unwrap();
        let dev = frobenius_norm(&fresh_half.sub(&step.r_half).unwrap());
        assert!(
            dev <= 1e-10 * report.residual_history[0],
            "half-step residual drift {dev:e}"
        );

        // and at the full step
        let fresh = sylvsolve::residual(&problem, &step.x).unwrap();
        let dev = frobenius_norm(&fresh.sub(&step.r).unwrap());
        assert!(
            dev <= 1e-10 * report.residual_history[0],
            "full-step residual drift {dev:e}"
        );

        // direction update vs fresh shifted solve against the new residual
        let fresh_delta = direct_kron_solve(&ha, &hb, &step.r).unwrap();
        let scale = frobenius_norm(&fresh_delta).max(1e-300);
        let dev = frobenius_norm(&fresh_delta.sub(&step.delta_next).unwrap()) / scale;
        assert!(dev <= 1e-10, "direction update drift {dev:e}");
    }
}

#[test]
fn generated_families_satisfy_standing_assumption() {
    // positive-definite stacked Hermitian part at every benchmark size
    for &n in &[8usize, 16, 32, 64] {
        let p1 = ProblemSpec::example1(n, n, 0.01).build().unwrap();
        let (lo, hi) = sylvsolve::hermitian_part_extent(p1.a(), p1.b(), 1e-9).unwrap();
        assert!(lo > 0.0 && hi > lo, "example1 n = {n}: extent [{lo}, {hi}]");

        let p2 = ProblemSpec::example2(n, 0.01, 1.0).build().unwrap();
        let (lo, hi) = sylvsolve::hermitian_part_extent(p2.a(), p2.b(), 1e-9).unwrap();
        assert!(lo > 0.0 && hi > lo, "example2 n = {n}: extent [{lo}, {hi}]");
    }
}

#[test]
fn residual_vanishes_at_oracle_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let a = random_pd(&mut rng, 5);
    let b = random_pd(&mut rng, 4);
    let c = random_dense(&mut rng, 5, 4);
    let problem = SylvesterProblem::new(a.clone(), b.clone(), c.clone()).unwrap();
    let x = direct_kron_solve(&a, &b, &c).unwrap();
    let r = sylvsolve::residual(&problem, &x).unwrap();
    assert!(frobenius_norm(&r) <= 1e-12 * frobenius_norm(&c));
}

#[test]
fn known_solution_mode_recovered_at_small_sizes() {
    for &(n, m) in &[(4usize, 5usize), (6, 4), (8, 8)] {
        let p = ProblemSpec::example1(n, m, 0.01).build().unwrap();
        let x = direct_kron_solve(p.a(), p.b(), p.c()).unwrap();
        let ones = DenseMatrix::ones(n, m);
        let dev = frobenius_norm(&x.sub(&ones).unwrap()) / frobenius_norm(&ones);
        assert!(dev <= 1e-10, "({n},{m}) recovery error {dev:e}");
    }
}
