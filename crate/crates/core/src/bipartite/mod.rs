//! Pure states of a two-part system as coefficient matrices.
//!
//! A state `|Ψ⟩ = Σ ψ_ij |i⟩₁|j⟩₂` is carried by the `d1 x d2` matrix
//! `Ψ = [ψ_ij]`. In this picture local operators and reductions become plain
//! matrix products:
//!
//! * `(A ⊗ B)|Ψ⟩` has coefficient matrix `A Ψ Bᵀ`,
//! * the overlap `⟨A|B⟩` is `Tr[A^dag B]`,
//! * `Tr₂|Ψ⟩⟨Ψ| = Ψ Ψ^dag` and `Tr₁|Ψ⟩⟨Ψ| = Ψᵀ Ψ*`.

mod schmidt;
mod spectrum;
mod state;

use num_complex::Complex64;

pub use schmidt::{random_state_with_spectrum, schmidt_decompose, SchmidtForm};
pub use spectrum::{cluster_spectrum, Cluster, DegeneracySpectrum};
pub use state::{matrix_to_vec, vec_to_matrix, BipartiteState};

use crate::error::{Error, Result};
use crate::matkernel::ComplexMatrix;

/// Coefficient matrix of `(a ⊗ b)|Ψ⟩`, i.e. `a Ψ bᵀ`. Normalized whenever
/// `a` and `b` are unitary, but not checked.
pub fn apply_local(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    state: &BipartiteState,
) -> Result<ComplexMatrix> {
    let (d1, d2) = state.dims();
    if a.shape() != (d1, d1) || b.shape() != (d2, d2) {
        return Err(Error::DimensionMismatch(format!(
            "local operators {}x{} and {}x{} do not act on a {d1}x{d2} state",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(&(a * state.psi()) * &b.transpose())
}

/// Hilbert-Schmidt inner product `Tr[a^dag b]`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (a, b) = (a.as_dmatrix(), b.as_dmatrix());
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// Reduced state of subsystem 1, `Tr₂|Ψ⟩⟨Ψ| = Ψ Ψ^dag` (`d1 x d1`).
pub fn partial_trace_2(state: &BipartiteState) -> ComplexMatrix {
    state.psi() * &state.psi().adjoint()
}

/// Reduced state of subsystem 2, `Tr₁|Ψ⟩⟨Ψ| = Ψᵀ Ψ*` (`d2 x d2`).
pub fn partial_trace_1(state: &BipartiteState) -> ComplexMatrix {
    &state.psi().transpose() * &state.psi().conj()
}
