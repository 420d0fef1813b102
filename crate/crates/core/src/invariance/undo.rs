use super::structure::{invariance_structure, InvarianceStructure};
use super::UnitaryPair;
use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::matkernel::ComplexMatrix;
use crate::tolerance::Tolerances;

/// Result of trying to compensate a local unitary on subsystem 1 by one on
/// subsystem 2.
#[derive(Clone, Debug)]
pub enum UndoOutcome {
    Solved(UnitaryPair),
    /// `U₁` couples different degeneracy clusters (or support and null space)
    /// in the Schmidt basis. `off_block_mass` is the Frobenius norm of the
    /// offending entries of `R₁ = S₁* U₁ S₁ᵀ`.
    NoSolution {
        off_block_mass: f64,
    },
}

impl UndoOutcome {
    pub fn solved(&self) -> Option<&UnitaryPair> {
        match self {
            UndoOutcome::Solved(pair) => Some(pair),
            UndoOutcome::NoSolution { .. } => None,
        }
    }
}

/// Finds `U₂` with `U₁ ⊗ U₂ |Ψ⟩ = |Ψ⟩`, if one exists.
///
/// `U₁` is moved to the Schmidt basis, `R₁ = S₁* U₁ S₁ᵀ`. A partner exists iff
/// `R₁` is block diagonal over the clusters and the null space; then `R₂`
/// takes the conjugate of each cluster block and the identity on the side-2
/// null space.
pub fn undo_operator(
    u1: &ComplexMatrix,
    structure: &InvarianceStructure,
    unitary_tol: f64,
    tol: f64,
) -> Result<UndoOutcome> {
    let (d1, d2) = structure.dims();
    if u1.shape() != (d1, d1) {
        return Err(Error::DimensionMismatch(format!(
            "U1 is {}x{}, subsystem 1 has dimension {d1}",
            u1.rows(),
            u1.cols()
        )));
    }
    let deviation = u1.unitarity_deviation()?;
    if deviation > unitary_tol {
        return Err(Error::NotUnitary { deviation });
    }

    let r1 = structure.to_schmidt_1(u1)?;
    let off_block_mass = off_block_mass(&r1, &structure.side1_ranges());
    if off_block_mass > tol {
        return Ok(UndoOutcome::NoSolution { off_block_mass });
    }

    let mut blocks: Vec<ComplexMatrix> = structure
        .support_blocks
        .iter()
        .map(|b| r1.block(b.start, b.start, b.size, b.size).conj())
        .collect();
    let null2 = d2 - structure.rank();
    if null2 > 0 {
        blocks.push(ComplexMatrix::identity(null2)?);
    }
    let r2 = ComplexMatrix::direct_sum(&blocks)?;
    let u2 = structure.to_original_2(&r2)?;
    Ok(UndoOutcome::Solved(UnitaryPair::new_unchecked(
        u1.clone(),
        u2,
    )))
}

/// [`undo_operator`] starting from the state, with the given thresholds.
pub fn undo_for_state(
    u1: &ComplexMatrix,
    state: &BipartiteState,
    tols: &Tolerances,
) -> Result<UndoOutcome> {
    let structure = invariance_structure(state, tols.rank, tols.degeneracy)?;
    undo_operator(u1, &structure, tols.unitary, tols.invariance)
}

/// Frobenius norm of the entries of `m` outside the diagonal blocks `ranges`.
pub fn off_block_mass(m: &ComplexMatrix, ranges: &[std::ops::Range<usize>]) -> f64 {
    let n = m.rows();
    let mut label = vec![usize::MAX; n];
    for (k, r) in ranges.iter().enumerate() {
        for i in r.clone() {
            label[i] = k;
        }
    }
    let mut mass = 0.0;
    for i in 0..n {
        for j in 0..m.cols() {
            if label[i] != label[j] {
                mass += m.get(i, j).norm_sqr();
            }
        }
    }
    mass.sqrt()
}
