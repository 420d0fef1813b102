use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matkernel::ComplexMatrix;

/// A unit vector of `H1 ⊗ H2`, stored as its `d1 x d2` coefficient matrix.
///
/// `psi[(i, j)]` is the amplitude of `|i⟩₁ ⊗ |j⟩₂`. Flattening `psi` row-major
/// (subsystem 1 index major) gives the state vector in the ordering used by
/// [`crate::matkernel::kron`], so that `(A ⊗ B) vec(Ψ) = vec(A Ψ Bᵀ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    psi: ComplexMatrix,
}

impl BipartiteState {
    /// Accepts `psi` only if `|Tr[Ψ^dag Ψ] - 1| <= norm_tol`.
    pub fn new(psi: ComplexMatrix, norm_tol: f64) -> Result<Self> {
        let norm = psi.frobenius_norm();
        if (norm * norm - 1.0).abs() > norm_tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { psi })
    }

    /// Rescales `psi` to unit norm and returns the original norm alongside.
    pub fn normalized(psi: ComplexMatrix) -> Result<(Self, f64)> {
        let norm = psi.frobenius_norm();
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        let psi = psi.scale(Complex64::new(1.0 / norm, 0.0));
        Ok((Self { psi }, norm))
    }

    pub fn psi(&self) -> &ComplexMatrix {
        &self.psi
    }

    pub fn d1(&self) -> usize {
        self.psi.rows()
    }

    pub fn d2(&self) -> usize {
        self.psi.cols()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.psi.shape()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.psi
    }
}

/// Builds the state whose amplitude on `|i⟩₁|j⟩₂` is `amplitudes[i * d2 + j]`.
pub fn vec_to_matrix(
    amplitudes: &[Complex64],
    d1: usize,
    d2: usize,
    norm_tol: f64,
) -> Result<BipartiteState> {
    if d1.checked_mul(d2) != Some(amplitudes.len()) {
        return Err(Error::DimensionMismatch(format!(
            "{} amplitudes cannot fill a {d1}x{d2} coefficient matrix",
            amplitudes.len()
        )));
    }
    let psi = ComplexMatrix::from_row_major(d1, d2, amplitudes.to_vec())?;
    BipartiteState::new(psi, norm_tol)
}

/// Inverse of [`vec_to_matrix`].
pub fn matrix_to_vec(state: &BipartiteState) -> Vec<Complex64> {
    state.psi.to_row_major()
}
