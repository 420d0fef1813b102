//! Local unitary pairs that leave a bipartite pure state unchanged.
//!
//! A pair `(U₁, U₂)` stabilizes `|Ψ⟩` iff `U₁ Ψ U₂ᵀ = Ψ`. Writing
//! `Ψ = S₁ᵀ Σ S₂` and `U_j = S_jᵀ R_j S_j*`, the condition becomes
//! `R₁ Σ = Σ R₂*`, which forces `R₁` to be block diagonal over the clusters of
//! equal Schmidt coefficients, with `R₂` equal to its conjugate there, and
//! leaves both null spaces free.

mod lie;
mod structure;
mod undo;
mod verify;

use rand::Rng;

pub use lie::{anti_hermitian_basis, lie_algebra_dimension, linearized_constraints};
pub use structure::{
    group_dimension, invariance_structure, sample_invariant_pair, BlockType, Coupling,
    InvarianceStructure, NullBlocks, SupportBlock,
};
pub use undo::{off_block_mass, undo_for_state, undo_operator, UndoOutcome};
pub use verify::{commutant_check, is_invariant, kron_residual, CommutantCheck, InvarianceCheck};

use crate::error::{Error, Result};
use crate::matkernel::ComplexMatrix;

/// `(U₁, U₂)` acting on `H1 ⊗ H2`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryPair {
    pub u1: ComplexMatrix,
    pub u2: ComplexMatrix,
}

impl UnitaryPair {
    /// Checks that both factors are unitary within `tol`.
    pub fn new(u1: ComplexMatrix, u2: ComplexMatrix, tol: f64) -> Result<Self> {
        for u in [&u1, &u2] {
            let deviation = u.unitarity_deviation()?;
            if deviation > tol {
                return Err(Error::NotUnitary { deviation });
            }
        }
        Ok(Self { u1, u2 })
    }

    pub(crate) fn new_unchecked(u1: ComplexMatrix, u2: ComplexMatrix) -> Self {
        Self { u1, u2 }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.u1.rows(), self.u2.rows())
    }
}

/// Draws `count` invariant pairs. Each pair uses its own generator, built by
/// `make_rng(index)`, so the result does not depend on evaluation order.
pub fn sample_invariant_pairs<R, F>(
    structure: &InvarianceStructure,
    count: usize,
    mut make_rng: F,
) -> Vec<UnitaryPair>
where
    R: Rng,
    F: FnMut(usize) -> R,
{
    (0..count)
        .map(|i| sample_invariant_pair(structure, &mut make_rng(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::{random_state_with_spectrum, BipartiteState};
    use crate::tolerance::{DEGENERACY_TOL, INVARIANCE_TOL, NORM_TOL, RANK_TOL};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn real_state(rows: usize, cols: usize, entries: &[f64]) -> BipartiteState {
        BipartiteState::new(
            ComplexMatrix::from_real_row_major(rows, cols, entries).unwrap(),
            NORM_TOL,
        )
        .unwrap()
    }

    fn structure(s: &BipartiteState) -> InvarianceStructure {
        invariance_structure(s, RANK_TOL, DEGENERACY_TOL).unwrap()
    }

    #[test]
    fn bell_has_one_coupled_block() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let st = structure(&real_state(2, 2, &[h, 0.0, 0.0, h]));
        assert_eq!(st.support_blocks.len(), 1);
        assert_eq!(st.support_blocks[0].size, 2);
        assert_eq!((st.null_blocks.dim1, st.null_blocks.dim2), (0, 0));
        assert_eq!(
            st.block_types(),
            vec![BlockType {
                size: 2,
                count: 1,
                coupling: Coupling::Conjugate
            }]
        );
        assert_eq!(group_dimension(&st), 4);
    }

    #[test]
    fn product_state_has_phase_and_null_blocks() {
        let st = structure(&real_state(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(st.support_blocks.len(), 1);
        assert_eq!(st.support_blocks[0].size, 1);
        assert_eq!(
            st.null_blocks,
            NullBlocks {
                dim1: 1,
                dim2: 1,
                coupling: Coupling::Independent
            }
        );
        assert_eq!(group_dimension(&st), 3);
    }

    #[test]
    fn pair_plus_null_in_three_dimensions() {
        let h = 0.5f64.sqrt();
        let st = structure(&real_state(
            3,
            3,
            &[h, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0, 0.0],
        ));
        assert_eq!(st.support_blocks.len(), 1);
        assert_eq!(st.support_blocks[0].size, 2);
        assert_eq!((st.null_blocks.dim1, st.null_blocks.dim2), (1, 1));
        assert_eq!(group_dimension(&st), 4 + 1 + 1);
        assert_eq!(st.side1_ranges(), vec![0..2, 2..3]);
    }

    #[test]
    fn nondegenerate_two_level_dimension() {
        let st = structure(&real_state(2, 2, &[0.8f64.sqrt(), 0.0, 0.0, 0.2f64.sqrt()]));
        assert_eq!(group_dimension(&st), 2);
    }

    #[test]
    fn product_state_samples_act_by_opposite_phases() {
        let st = structure(&real_state(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let pair = sample_invariant_pair(&st, &mut rng);
            let a = pair.u1.get(0, 0);
            let b = pair.u2.get(0, 0);
            assert!((a.norm() - 1.0).abs() < 1e-12);
            assert!((a * b - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            assert!(pair.u1.get(1, 0).norm() < 1e-12 && pair.u2.get(1, 0).norm() < 1e-12);
        }
    }

    #[test]
    fn bell_samples_are_conjugate_pairs() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let st = structure(&real_state(2, 2, &[h, 0.0, 0.0, h]));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pair = sample_invariant_pair(&st, &mut rng);
        let r1 = st.to_schmidt_1(&pair.u1).unwrap();
        let r2 = st.to_schmidt_2(&pair.u2).unwrap();
        assert!(r1.conj().max_abs_diff(&r2).unwrap() < 1e-12);
    }

    #[test]
    fn random_distinct_spectrum_samples_are_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let sigma = [0.6f64.sqrt(), 0.3f64.sqrt(), 0.1f64.sqrt()];
        let s = random_state_with_spectrum(&sigma, 3, 3, NORM_TOL, &mut rng).unwrap();
        let st = structure(&s);
        for _ in 0..1000 {
            let pair = sample_invariant_pair(&st, &mut rng);
            assert!(is_invariant(&pair, &s, INVARIANCE_TOL).unwrap().invariant);
        }
    }

    #[test]
    fn batch_sampling_is_order_independent() {
        let st = structure(&real_state(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        let a = sample_invariant_pairs(&st, 4, |i| ChaCha8Rng::seed_from_u64(100 + i as u64));
        let b: Vec<_> = (0..4)
            .rev()
            .map(|i| sample_invariant_pair(&st, &mut ChaCha8Rng::seed_from_u64(100 + i as u64)))
            .collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn assemble_rejects_wrong_blocks() {
        let st = structure(&real_state(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        let one = ComplexMatrix::identity(1).unwrap();
        assert!(st
            .assemble_schmidt_pair(std::slice::from_ref(&one), None, Some(&one))
            .is_err());
        assert!(st
            .assemble_schmidt_pair(&[], Some(&one), Some(&one))
            .is_err());
        assert!(st
            .assemble_schmidt_pair(std::slice::from_ref(&one), Some(&one), Some(&one))
            .is_ok());
    }

    #[test]
    fn unitary_pair_validation() {
        let bad = ComplexMatrix::from_real_row_major(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let id = ComplexMatrix::identity(2).unwrap();
        assert!(matches!(
            UnitaryPair::new(bad, id.clone(), 1e-10),
            Err(Error::NotUnitary { .. })
        ));
        assert!(UnitaryPair::new(id.clone(), id, 1e-10).is_ok());
    }
}
