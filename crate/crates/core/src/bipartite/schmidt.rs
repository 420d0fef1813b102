use num_complex::Complex64;
use rand::Rng;

use super::state::BipartiteState;
use crate::error::{Error, Result};
use crate::matkernel::{haar_unitary, svd, ComplexMatrix};

/// `Ψ = S₁ᵀ Σ S₂` with unitary `S₁` (`d1 x d1`), `S₂` (`d2 x d2`) and a
/// rectangular diagonal `Σ`.
///
/// Row `k` of `S₁` holds the components of the `k`-th Schmidt vector of
/// subsystem 1, likewise for `S₂`; so `|Ψ⟩ = Σ_k σ_k |φ_k⟩ ⊗ |θ_k⟩`.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub s1: ComplexMatrix,
    pub s2: ComplexMatrix,
    /// Length `min(d1, d2)`, non-increasing.
    pub sigma: Vec<f64>,
    /// Count of `σ_k > rank_tol * σ_max`.
    pub rank: usize,
}

impl SchmidtForm {
    pub fn dims(&self) -> (usize, usize) {
        (self.s1.rows(), self.s2.rows())
    }

    /// `Σ` as a `d1 x d2` matrix.
    pub fn sigma_matrix(&self) -> ComplexMatrix {
        let (d1, d2) = self.dims();
        ComplexMatrix::rectangular_diagonal(d1, d2, &self.sigma).expect("sigma fits")
    }

    /// `S₁ᵀ Σ S₂`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.s1.transpose() * &self.sigma_matrix()) * &self.s2
    }

    /// `|φ_k⟩` as a column of amplitudes in the computational basis of subsystem 1.
    pub fn vector_1(&self, k: usize) -> Vec<Complex64> {
        (0..self.s1.cols()).map(|i| self.s1.get(k, i)).collect()
    }

    /// `|θ_k⟩` in the computational basis of subsystem 2.
    pub fn vector_2(&self, k: usize) -> Vec<Complex64> {
        (0..self.s2.cols()).map(|j| self.s2.get(k, j)).collect()
    }
}

/// Schmidt decomposition from the SVD `Ψ = U Σ V^dag`: `S₁ = Uᵀ`, `S₂ = V^dag`.
pub fn schmidt_decompose(state: &BipartiteState, rank_tol: f64) -> Result<SchmidtForm> {
    let dec = svd(state.psi())?;
    let sigma_max = dec.sigma_max();
    let rank = dec
        .sigma
        .iter()
        .filter(|&&s| s > rank_tol * sigma_max)
        .count();
    Ok(SchmidtForm {
        s1: dec.u.transpose(),
        s2: dec.v.adjoint(),
        sigma: dec.sigma,
        rank,
    })
}

/// Random state `S₁ᵀ Σ S₂` with Haar-random `S₁`, `S₂` and the given Schmidt
/// coefficients. `sigma` need not be sorted; its squares must sum to one
/// within `norm_tol` and it may be shorter than `min(d1, d2)`.
pub fn random_state_with_spectrum<R: Rng + ?Sized>(
    sigma: &[f64],
    d1: usize,
    d2: usize,
    norm_tol: f64,
    rng: &mut R,
) -> Result<BipartiteState> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Empty { rows: d1, cols: d2 });
    }
    if sigma.is_empty() || sigma.len() > d1.min(d2) {
        return Err(Error::BadSpectrum(format!(
            "need between 1 and {} coefficients for a {d1}x{d2} state, got {}",
            d1.min(d2),
            sigma.len()
        )));
    }
    if let Some(bad) = sigma.iter().find(|s| !s.is_finite() || **s < 0.0) {
        return Err(Error::BadSpectrum(format!(
            "coefficient {bad} is not a finite non-negative number"
        )));
    }
    let total: f64 = sigma.iter().map(|s| s * s).sum();
    if (total - 1.0).abs() > norm_tol {
        return Err(Error::BadSpectrum(format!(
            "squared coefficients sum to {total:.17}, expected 1"
        )));
    }
    let mut sorted = sigma.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let core = ComplexMatrix::rectangular_diagonal(d1, d2, &sorted)?;
    let s1 = haar_unitary(d1, rng);
    let s2 = haar_unitary(d2, rng);
    let psi = &(&s1.transpose() * &core) * &s2;
    BipartiteState::new(psi, norm_tol)
}
