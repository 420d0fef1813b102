use rand::Rng;
use serde::Serialize;

use super::UnitaryPair;
use crate::bipartite::{
    cluster_spectrum, schmidt_decompose, BipartiteState, DegeneracySpectrum, SchmidtForm,
};
use crate::error::{Error, Result};
use crate::matkernel::{haar_unitary, ComplexMatrix};

/// How the side-2 block is tied to the side-1 block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// `R₂`-block is the complex conjugate of the `R₁`-block.
    Conjugate,
    /// The two sides are free and unrelated.
    Independent,
}

/// One free unitary block on the support, acting on a degeneracy cluster.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportBlock {
    /// First Schmidt index covered by the block.
    pub start: usize,
    pub size: usize,
    /// Common Schmidt coefficient of the cluster.
    pub sigma: f64,
}

/// `r_k` blocks of size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockType {
    pub size: usize,
    pub count: usize,
    pub coupling: Coupling,
}

/// Free unitaries on the two null subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NullBlocks {
    pub dim1: usize,
    pub dim2: usize,
    pub coupling: Coupling,
}

/// The local unitary stabilizer of a state.
///
/// In the Schmidt basis every invariant pair has the form
///
/// ```text
/// R₁ = W₁ ⊕ … ⊕ W_c ⊕ V₁
/// R₂ = W₁* ⊕ … ⊕ W_c* ⊕ V₂
/// ```
///
/// with one arbitrary unitary `W` per degeneracy cluster (its size is the
/// multiplicity) and arbitrary `V₁`, `V₂` on the null subspaces. In the
/// computational basis `U_j = S_jᵀ R_j S_j*`.
#[derive(Clone, Debug)]
pub struct InvarianceStructure {
    pub schmidt: SchmidtForm,
    pub spectrum: DegeneracySpectrum,
    /// One block per cluster, in Schmidt order.
    pub support_blocks: Vec<SupportBlock>,
    pub null_blocks: NullBlocks,
}

impl InvarianceStructure {
    pub fn dims(&self) -> (usize, usize) {
        self.schmidt.dims()
    }

    pub fn rank(&self) -> usize {
        self.spectrum.rank
    }

    /// Blocks grouped by size, smallest first: `(1, r₁), (2, r₂), …`.
    pub fn block_types(&self) -> Vec<BlockType> {
        self.spectrum
            .r_counts
            .iter()
            .map(|(&size, &count)| BlockType {
                size,
                count,
                coupling: Coupling::Conjugate,
            })
            .collect()
    }

    /// Index ranges of the side-1 blocks: the clusters, then the null block if any.
    pub fn side1_ranges(&self) -> Vec<std::ops::Range<usize>> {
        self.side_ranges(self.dims().0)
    }

    pub fn side2_ranges(&self) -> Vec<std::ops::Range<usize>> {
        self.side_ranges(self.dims().1)
    }

    fn side_ranges(&self, d: usize) -> Vec<std::ops::Range<usize>> {
        let mut ranges: Vec<_> = self
            .support_blocks
            .iter()
            .map(|b| b.start..b.start + b.size)
            .collect();
        if d > self.rank() {
            ranges.push(self.rank()..d);
        }
        ranges
    }

    /// `S₁ᵀ R₁ S₁*`.
    pub fn to_original_1(&self, r1: &ComplexMatrix) -> Result<ComplexMatrix> {
        change_basis_out(&self.schmidt.s1, r1)
    }

    /// `S₂ᵀ R₂ S₂*`.
    pub fn to_original_2(&self, r2: &ComplexMatrix) -> Result<ComplexMatrix> {
        change_basis_out(&self.schmidt.s2, r2)
    }

    /// `S₁* U₁ S₁ᵀ`.
    pub fn to_schmidt_1(&self, u1: &ComplexMatrix) -> Result<ComplexMatrix> {
        change_basis_in(&self.schmidt.s1, u1)
    }

    /// `S₂* U₂ S₂ᵀ`.
    pub fn to_schmidt_2(&self, u2: &ComplexMatrix) -> Result<ComplexMatrix> {
        change_basis_in(&self.schmidt.s2, u2)
    }

    /// Assembles the Schmidt-basis pair `(⊕W ⊕ V₁, ⊕W* ⊕ V₂)` from explicit
    /// blocks. `v1`/`v2` must be present exactly when the null space on that
    /// side is nontrivial.
    pub fn assemble_schmidt_pair(
        &self,
        support: &[ComplexMatrix],
        v1: Option<&ComplexMatrix>,
        v2: Option<&ComplexMatrix>,
    ) -> Result<(ComplexMatrix, ComplexMatrix)> {
        if support.len() != self.support_blocks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} support blocks given, structure has {}",
                support.len(),
                self.support_blocks.len()
            )));
        }
        for (w, b) in support.iter().zip(&self.support_blocks) {
            if w.shape() != (b.size, b.size) {
                return Err(Error::DimensionMismatch(format!(
                    "support block at {} must be {}x{}, got {}x{}",
                    b.start,
                    b.size,
                    b.size,
                    w.rows(),
                    w.cols()
                )));
            }
        }
        let side =
            |null: Option<&ComplexMatrix>, dim: usize, conj: bool| -> Result<ComplexMatrix> {
                let mut blocks: Vec<ComplexMatrix> = support
                    .iter()
                    .map(|w| if conj { w.conj() } else { w.clone() })
                    .collect();
                match (null, dim) {
                    (None, 0) => {}
                    (Some(v), d) if d > 0 && v.shape() == (d, d) => blocks.push(v.clone()),
                    _ => {
                        return Err(Error::DimensionMismatch(format!(
                            "null block must be {dim}x{dim}"
                        )))
                    }
                }
                ComplexMatrix::direct_sum(&blocks)
            };
        Ok((
            side(v1, self.null_blocks.dim1, false)?,
            side(v2, self.null_blocks.dim2, true)?,
        ))
    }

    /// Draws Haar-random blocks and returns the Schmidt-basis pair `(R₁, R₂)`.
    pub fn sample_schmidt_pair<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> (ComplexMatrix, ComplexMatrix) {
        let support: Vec<ComplexMatrix> = self
            .support_blocks
            .iter()
            .map(|b| haar_unitary(b.size, rng))
            .collect();
        let v1 = (self.null_blocks.dim1 > 0).then(|| haar_unitary(self.null_blocks.dim1, rng));
        let v2 = (self.null_blocks.dim2 > 0).then(|| haar_unitary(self.null_blocks.dim2, rng));
        self.assemble_schmidt_pair(&support, v1.as_ref(), v2.as_ref())
            .expect("blocks drawn with matching shapes")
    }
}

/// Stabilizer structure of `state`: Schmidt decomposition, degeneracy
/// clusters and the resulting block layout.
pub fn invariance_structure(
    state: &BipartiteState,
    rank_tol: f64,
    degeneracy_tol: f64,
) -> Result<InvarianceStructure> {
    let schmidt = schmidt_decompose(state, rank_tol)?;
    let spectrum = cluster_spectrum(&schmidt.sigma, state.dims(), rank_tol, degeneracy_tol)?;
    let support_blocks = spectrum
        .clusters
        .iter()
        .map(|c| SupportBlock {
            start: c.start,
            size: c.multiplicity,
            sigma: c.value,
        })
        .collect();
    let (dim1, dim2) = spectrum.null_dims;
    Ok(InvarianceStructure {
        schmidt,
        spectrum,
        support_blocks,
        null_blocks: NullBlocks {
            dim1,
            dim2,
            coupling: Coupling::Independent,
        },
    })
}

/// Random element of the stabilizer: Haar-random blocks, mapped back to the
/// computational basis.
pub fn sample_invariant_pair<R: Rng + ?Sized>(
    structure: &InvarianceStructure,
    rng: &mut R,
) -> UnitaryPair {
    let (r1, r2) = structure.sample_schmidt_pair(rng);
    let u1 = structure.to_original_1(&r1).expect("shapes agree");
    let u2 = structure.to_original_2(&r2).expect("shapes agree");
    UnitaryPair::new_unchecked(u1, u2)
}

/// Real dimension of the stabilizer group, `Σ m_c² + (d1 - r)² + (d2 - r)²`.
pub fn group_dimension(structure: &InvarianceStructure) -> usize {
    let support: usize = structure
        .support_blocks
        .iter()
        .map(|b| b.size * b.size)
        .sum();
    let NullBlocks { dim1, dim2, .. } = structure.null_blocks;
    support + dim1 * dim1 + dim2 * dim2
}

fn change_basis_out(s: &ComplexMatrix, r: &ComplexMatrix) -> Result<ComplexMatrix> {
    s.transpose().matmul(r)?.matmul(&s.conj())
}

fn change_basis_in(s: &ComplexMatrix, u: &ComplexMatrix) -> Result<ComplexMatrix> {
    s.conj().matmul(u)?.matmul(&s.transpose())
}
