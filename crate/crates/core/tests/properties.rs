//! Randomized invariants over the whole library.

mod common;

use common::{brute_partial_traces, givens, random_structured_state};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::{
    apply_local, cluster_spectrum, matrix_to_vec, partial_trace_1, partial_trace_2,
    schmidt_decompose, vec_to_matrix,
};
use uli::invariance::{
    commutant_check, group_dimension, invariance_structure, is_invariant, kron_residual,
    lie_algebra_dimension, sample_invariant_pair, undo_operator, UndoOutcome, UnitaryPair,
};
use uli::matkernel::{ginibre, haar_unitary, kron, svd};
use uli::tolerance::{
    DEGENERACY_TOL, INVARIANCE_TOL, NORM_TOL, NULLSPACE_TOL, RANK_TOL, UNITARY_TOL,
};
use uli::ComplexMatrix;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn column(m: &ComplexMatrix) -> ComplexMatrix {
    let v = m.to_row_major();
    ComplexMatrix::from_row_major(v.len(), 1, v).unwrap()
}

/// Eigenvalues of a Hermitian matrix through nalgebra's symmetric solver,
/// sorted in decreasing order. Independent of the crate's SVD.
fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m
        .as_dmatrix()
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn svd_reconstructs(rows in 1usize..=7, cols in 1usize..=7, seed in any::<u64>()) {
        let m = ginibre(rows, cols, &mut rng(seed));
        let dec = svd(&m).unwrap();
        prop_assert!(dec.u.is_unitary(1e-12));
        prop_assert!(dec.v.is_unitary(1e-12));
        prop_assert!(dec.sigma.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(dec.reconstruct().max_abs_diff(&m).unwrap() <= 1e-12 * dec.sigma_max().max(1.0));
    }

    #[test]
    fn haar_samples_are_unitary(n in 1usize..=16, seed in any::<u64>()) {
        prop_assert!(haar_unitary(n, &mut rng(seed)).is_unitary(1e-12));
    }

    #[test]
    fn vectorization_round_trips(d1 in 1usize..=6, d2 in 1usize..=6, seed in any::<u64>()) {
        let (state, _) = uli::bipartite::BipartiteState::normalized(ginibre(d1, d2, &mut rng(seed))).unwrap();
        let v = matrix_to_vec(&state);
        let back = vec_to_matrix(&v, d1, d2, NORM_TOL).unwrap();
        prop_assert_eq!(back.psi(), state.psi());
    }

    #[test]
    fn local_action_matches_kronecker(d1 in 1usize..=5, d2 in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, _) = uli::bipartite::BipartiteState::normalized(ginibre(d1, d2, &mut r)).unwrap();
        let a = ginibre(d1, d1, &mut r);
        let b = ginibre(d2, d2, &mut r);
        let direct = column(&apply_local(&a, &b, &state).unwrap());
        let via_kron = kron(&a, &b).unwrap().matmul(&column(state.psi())).unwrap();
        prop_assert!(direct.max_abs_diff(&via_kron).unwrap() <= 1e-12);
    }

    #[test]
    fn partial_traces_match_brute_force(d1 in 1usize..=5, d2 in 1usize..=5, seed in any::<u64>()) {
        let (state, _) = uli::bipartite::BipartiteState::normalized(ginibre(d1, d2, &mut rng(seed))).unwrap();
        let (tr2, tr1) = brute_partial_traces(state.psi(), state.psi());
        prop_assert!(partial_trace_2(&state).max_abs_diff(&tr2).unwrap() <= 1e-12);
        prop_assert!(partial_trace_1(&state).max_abs_diff(&tr1).unwrap() <= 1e-12);
    }

    #[test]
    fn reduced_spectra_are_squared_schmidt_coefficients(d1 in 1usize..=5, d2 in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sigma) = random_structured_state(&mut r, d1, d2, true);
        let form = schmidt_decompose(&state, RANK_TOL).unwrap();
        for (got, want) in form.sigma.iter().zip(&sigma) {
            prop_assert!((got - want).abs() <= 1e-12);
        }
        prop_assert!(form.reconstruct().max_abs_diff(state.psi()).unwrap() <= 1e-12);
        for (rho, d) in [(partial_trace_2(&state), d1), (partial_trace_1(&state), d2)] {
            let ev = hermitian_eigenvalues(&rho);
            prop_assert_eq!(ev.len(), d);
            for (k, value) in ev.iter().enumerate() {
                let want = sigma.get(k).map_or(0.0, |s| s * s);
                prop_assert!((value - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn cluster_totals_match_rank(d1 in 1usize..=6, d2 in 1usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sigma) = random_structured_state(&mut r, d1, d2, true);
        let form = schmidt_decompose(&state, RANK_TOL).unwrap();
        let spec = cluster_spectrum(&form.sigma, (d1, d2), RANK_TOL, DEGENERACY_TOL).unwrap();
        prop_assert_eq!(spec.rank, sigma.len());
        prop_assert_eq!(spec.clusters.iter().map(|c| c.multiplicity).sum::<usize>(), spec.rank);
        prop_assert_eq!(spec.r_counts.iter().map(|(k, n)| k * n).sum::<usize>(), spec.rank);
        prop_assert_eq!(spec.null_dims, (d1 - spec.rank, d2 - spec.rank));
        let mut distinct = sigma.clone();
        distinct.dedup();
        prop_assert_eq!(spec.clusters.len(), distinct.len());
    }

    #[test]
    fn sampled_pairs_are_invariant(d1 in 1usize..=6, d2 in 1usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, _) = random_structured_state(&mut r, d1, d2, true);
        let st = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL).unwrap();
        for _ in 0..4 {
            let pair = sample_invariant_pair(&st, &mut r);
            prop_assert!(pair.u1.is_unitary(1e-12) && pair.u2.is_unitary(1e-12));
            let check = is_invariant(&pair, &state, INVARIANCE_TOL).unwrap();
            prop_assert!(check.invariant, "residual {}", check.residual);
            let c = commutant_check(&pair, &state, INVARIANCE_TOL).unwrap();
            prop_assert!(c.both());
        }
    }

    #[test]
    fn invariant_pairs_have_the_block_form(d in 2usize..=5, seed in any::<u64>()) {
        // Necessity: any invariant pair, here obtained by solving for U₂ from
        // a block-diagonal U₁ built independently of the sampler, commutes
        // with the reduced states and has R₂ = R₁* on the support.
        let mut r = rng(seed);
        let (state, _) = random_structured_state(&mut r, d, d, true);
        let st = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL).unwrap();
        let (r1, _) = st.sample_schmidt_pair(&mut r);
        let u1 = st.to_original_1(&r1).unwrap();
        let pair = undo_operator(&u1, &st, UNITARY_TOL, INVARIANCE_TOL).unwrap();
        let pair = pair.solved().expect("block-diagonal U1 has a partner");
        let r2 = st.to_schmidt_2(&pair.u2).unwrap();
        let rank = st.rank();
        prop_assert!(r1.block(0, 0, rank, rank).conj().max_abs_diff(&r2.block(0, 0, rank, rank)).unwrap() <= 1e-10);
        prop_assert!(commutant_check(pair, &state, INVARIANCE_TOL).unwrap().both());
    }

    #[test]
    fn lie_dimension_equals_group_dimension(d1 in 1usize..=5, d2 in 1usize..=5, seed in any::<u64>()) {
        let (state, _) = random_structured_state(&mut rng(seed), d1, d2, true);
        let st = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL).unwrap();
        prop_assert_eq!(lie_algebra_dimension(&state, NULLSPACE_TOL).unwrap(), group_dimension(&st));
    }

    #[test]
    fn undo_recovers_sampled_partner(d1 in 1usize..=5, d2 in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, _) = random_structured_state(&mut r, d1, d2, true);
        let st = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL).unwrap();
        let sampled = sample_invariant_pair(&st, &mut r);
        match undo_operator(&sampled.u1, &st, UNITARY_TOL, INVARIANCE_TOL).unwrap() {
            UndoOutcome::Solved(pair) => {
                prop_assert!(pair.u2.is_unitary(1e-12));
                prop_assert!(is_invariant(&pair, &state, INVARIANCE_TOL).unwrap().invariant);
            }
            UndoOutcome::NoSolution { off_block_mass } => prop_assert!(false, "mass {off_block_mass}"),
        }
    }

    #[test]
    fn cluster_mixing_has_no_partner(d in 2usize..=5, theta in 0.01f64..1.5, phase in 0.0f64..std::f64::consts::TAU, seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = common::random_spectrum(&mut r, d, false);
        let state = uli::bipartite::random_state_with_spectrum(&sigma, d, d, NORM_TOL, &mut r).unwrap();
        let st = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL).unwrap();
        let base = sample_invariant_pair(&st, &mut r);
        let mix = st.to_original_1(&givens(d, 0, d - 1, theta, phase)).unwrap();
        let u1 = base.u1.matmul(&mix).unwrap();
        let outcome = undo_operator(&u1, &st, UNITARY_TOL, INVARIANCE_TOL).unwrap();
        let rejected = matches!(outcome, UndoOutcome::NoSolution { .. });
        prop_assert!(rejected);
    }

    #[test]
    fn residual_agrees_with_kronecker_route(d1 in 1usize..=5, d2 in 1usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, _) = random_structured_state(&mut r, d1, d2, true);
        let pair = UnitaryPair::new(haar_unitary(d1, &mut r), haar_unitary(d2, &mut r), UNITARY_TOL).unwrap();
        let direct = is_invariant(&pair, &state, INVARIANCE_TOL).unwrap().residual;
        prop_assert!((direct - kron_residual(&pair, &state).unwrap()).abs() <= 1e-13);
    }
}

#[test]
fn hermitian_solver_sanity() {
    let m = ComplexMatrix::from_dmatrix(DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ],
    ))
    .unwrap();
    let ev = hermitian_eigenvalues(&m);
    assert!((ev[0] - 3.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
}
