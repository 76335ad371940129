mod common;

use common::*;
use proptest::prelude::*;
use wchan::blahut_arimoto::blahut_arimoto_observed;
use wchan::markov_sim::{counts_to_frequencies, simulate_from};
use wchan::*;

#[test]
fn matches_flip_enumeration() {
    for n in 1..=8 {
        for &alpha in &[0.0, 0.1, 0.25, 0.4, 0.5, 0.83, 1.0] {
            let oracle = enumerate_matrix(n, alpha);
            let m = build_matrix(params(n, alpha));
            assert!(m.as_dense().max_abs_diff(&oracle) <= 1e-12, "n={n} alpha={alpha}");
        }
    }
}

#[test]
fn appendix_identity_on_grid() {
    for n in 1..=10 {
        for alpha in grid(0.0, 1.0, 0.05) {
            let m = build_matrix(params(n, alpha));
            let b = m.as_dense().matmul(&signed_companion(&m));
            let scale = (1.0 - 2.0 * alpha).powi(n as i32);
            assert!(b.max_abs_diff(&DenseMatrix::identity(n + 1).scale(scale)) <= 1e-12);
        }
    }
}

#[test]
fn inverse_identity_within_conditioning_bound() {
    for n in 1..=10 {
        for alpha in grid(0.0, 1.0, 0.005) {
            let gap = (1.0 - 2.0 * alpha).abs();
            if gap < 0.01 - 1e-12 {
                continue;
            }
            let p = params(n, alpha);
            let err = build_matrix(p)
                .as_dense()
                .matmul(build_inverse(p).unwrap().as_dense())
                .max_abs_diff_identity();
            let bound = 64.0 * (n + 1) as f64 * f64::EPSILON / gap.powi(n as i32);
            assert!(err <= bound, "n={n} alpha={alpha}: {err:e} > {bound:e}");
            if gap >= 0.1 - 1e-12 && n <= 8 || gap >= 0.2 {
                assert!(err <= 1e-8, "n={n} alpha={alpha}: {err:e}");
            }
            if n <= 4 {
                assert!(err <= 1e-6, "n={n} alpha={alpha}: {err:e}");
            }
        }
    }
}

#[test]
fn closed_inverse_matches_elimination() {
    for n in 1..=10 {
        for alpha in grid(0.0, 1.0, 0.05) {
            if (alpha - 0.5).abs() < 1e-9 {
                continue;
            }
            let p = params(n, alpha);
            let closed = build_inverse(p).unwrap();
            let Ok(oracle) = numeric_inverse_oracle(build_matrix(p).as_dense()) else {
                continue;
            };
            for i in 0..=n {
                for j in 0..=n {
                    let (c, o) = (closed.get(i, j), oracle[(i, j)]);
                    assert!((c - o).abs() <= 1e-6 * c.abs().max(1e-300), "n={n} a={alpha} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn bsc_exactness() {
    for k in 1..50 {
        let alpha = k as f64 / 100.0;
        let sol = solve(params(1, alpha)).unwrap();
        assert!((sol.capacity_bits - (1.0 - reference_binary_entropy(alpha))).abs() <= 1e-9);
        assert_eq!(sol.validity, Validity::Valid);
    }
}

#[test]
fn closed_form_matches_ba_where_valid_and_bounds_it_elsewhere() {
    let config = BAConfig::default();
    for n in 1..=10 {
        for alpha in grid(0.01, 0.45, 0.01) {
            let p = params(n, alpha);
            let (a, inv) = (build_matrix(p), build_inverse(p).unwrap());
            let sol = solve_closed_form(&a, &inv).unwrap();
            let ba = blahut_arimoto(&a, &config);
            assert!(ba.converged);
            assert!(stationarity_residual(&a, &inv, &sol) <= 1e-9);
            match sol.validity {
                Validity::Valid => {
                    assert!((sol.capacity_bits - ba.capacity_bits).abs() <= 1e-6, "n={n} a={alpha}");
                    let clamped = classify_validity(&sol.p_star).clamped;
                    let mi = mutual_information(&a, &clamped).unwrap();
                    assert!((mi.i_xy - sol.capacity_bits).abs() <= 1e-9);
                }
                Validity::InvalidInput => {
                    assert!(sol.capacity_bits >= ba.capacity_bits - 1e-9, "n={n} a={alpha}");
                    assert_eq!(sol.capacity_role, CapacityRole::UpperBound);
                }
            }
        }
    }
}

#[test]
fn validity_boundary_per_n() {
    // First grid α (step 0.01) at which p* leaves the simplex.
    let expected = [None, Some(0.18), Some(0.19), Some(0.15), Some(0.13), Some(0.12), Some(0.11), Some(0.10), Some(0.09), Some(0.08)];
    for n in 1..=10 {
        let first_invalid = grid(0.01, 0.49, 0.01)
            .into_iter()
            .find(|&a| solve(params(n, a)).unwrap().validity == Validity::InvalidInput);
        assert_eq!(first_invalid, expected[n - 1], "n={n}");
    }
}

#[test]
fn capacity_degrades_with_alpha() {
    for n in 1..=10 {
        let alphas = grid(0.01, 0.49, 0.01);
        let ba: Vec<f64> = alphas
            .iter()
            .map(|&a| blahut_arimoto(&build_matrix(params(n, a)), &BAConfig::default()).capacity_bits)
            .collect();
        for w in ba.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "BA, n={n}");
        }

        // Past |1-2α|^n < 1e-10 the f64 inverse carries no significant
        // digits of K (checked against 60-digit arithmetic separately).
        let closed: Vec<f64> = alphas
            .iter()
            .filter(|&&a| (1.0 - 2.0 * a).powi(n as i32) >= 1e-10)
            .map(|&a| solve(params(n, a)).unwrap().capacity_bits)
            .collect();
        for w in closed.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "closed form, n={n}");
        }
    }
}

#[test]
fn ba_lower_bound_never_decreases() {
    for n in [2, 5, 10] {
        for alpha in [0.05, 0.2, 0.35, 0.45] {
            let m = build_matrix(params(n, alpha));
            let mut prev = f64::NEG_INFINITY;
            blahut_arimoto_observed(m.as_dense(), &BAConfig::default(), |it| {
                assert!(it.lower_bits >= prev - 1e-14);
                assert!(it.lower_bits <= it.upper_bits + 1e-15);
                assert!(it.p.iter().all(|&v| v >= 0.0));
                prev = it.lower_bits;
            });
        }
    }
}

#[test]
fn simulation_is_representative_independent() {
    let p = params(4, 0.3);
    let a = counts_to_frequencies(&simulate_from(p, 0b0011, 100_000, 11, 0), 100_000);
    let b = counts_to_frequencies(&simulate_from(p, 0b1010, 100_000, 12, 0), 100_000);
    let dev = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(dev <= 1e-2, "{dev}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn structural_invariants(n in 1usize..=10, alpha in 0.0f64..=1.0) {
        let m = build_matrix(params(n, alpha));
        prop_assert!(m.row_sum_error() <= 1e-12);
        prop_assert!(m.is_centrally_symmetric());
        prop_assert!(m.as_dense().as_slice().iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn solution_is_symmetric(n in 1usize..=10, alpha in 1e-6f64..=0.45) {
        let sol = solve(params(n, alpha)).unwrap();
        prop_assert!(sol.q_star.iter().all(|&q| q > 0.0));
        prop_assert!(is_palindrome(&sol.q_star, 0.0));
        prop_assert!(is_palindrome(&sol.k_vector, 0.0));
        prop_assert!(is_palindrome(&sol.p_star, 0.0));
        let p_sum: f64 = sol.p_star.iter().sum();
        let p_mass: f64 = sol.p_star.iter().map(|v| v.abs()).sum();
        prop_assert!((p_sum - 1.0).abs() <= 1e-10 * p_mass.max(1.0));
    }

    #[test]
    fn mutual_information_is_bounded(n in 1usize..=8, alpha in 0.0f64..=1.0, raw in prop::collection::vec(0.0f64..1.0, 9)) {
        let total: f64 = raw[..=n].iter().sum();
        prop_assume!(total > 1e-6);
        let p: Vec<f64> = raw[..=n].iter().map(|v| v / total).collect();
        let mi = mutual_information(&build_matrix(params(n, alpha)), &p).unwrap();
        prop_assert!((mi.i_xy - (mi.h_y - mi.h_y_given_x)).abs() <= 1e-12);
        prop_assert!(mi.i_xy >= -1e-12);
        prop_assert!(mi.i_xy <= ((n + 1) as f64).log2() + 1e-12);
    }
}
