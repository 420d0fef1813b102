//! Independent count of the stabilizer dimension.
//!
//! Differentiating `U₁ Ψ U₂ᵀ = Ψ` at the identity with `U_j = exp(t X_j)`
//! gives the linear condition `X₁ Ψ + Ψ X₂ᵀ = 0` on anti-Hermitian `X₁`, `X₂`.
//! Anti-Hermiticity is only real-linear, so the system is written over real
//! coordinates: `n²` per `n x n` anti-Hermitian matrix (one imaginary diagonal
//! entry per row, a real and an imaginary part per upper off-diagonal pair),
//! with the real and imaginary parts of every entry of the `d1 x d2` left-hand
//! side as equations.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bipartite::BipartiteState;
use crate::error::Result;
use crate::matkernel::{real_nullspace_dimension, ComplexMatrix};

/// Real basis of the `n x n` anti-Hermitian matrices (`n²` elements).
pub fn anti_hermitian_basis(n: usize) -> Vec<DMatrix<Complex64>> {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let mut basis = Vec::with_capacity(n * n);
    for k in 0..n {
        let mut m = DMatrix::zeros(n, n);
        m[(k, k)] = i;
        basis.push(m);
    }
    for k in 0..n {
        for l in k + 1..n {
            let mut re = DMatrix::zeros(n, n);
            re[(k, l)] = one;
            re[(l, k)] = -one;
            basis.push(re);

            let mut im = DMatrix::zeros(n, n);
            im[(k, l)] = i;
            im[(l, k)] = i;
            basis.push(im);
        }
    }
    basis
}

/// `2 d1 d2 x (d1² + d2²)` real matrix of the map `(X₁, X₂) -> X₁ Ψ + Ψ X₂ᵀ`.
pub fn linearized_constraints(psi: &ComplexMatrix) -> DMatrix<f64> {
    let (d1, d2) = psi.shape();
    let p = psi.as_dmatrix();
    let columns: Vec<DMatrix<Complex64>> = anti_hermitian_basis(d1)
        .into_iter()
        .map(|x1| x1 * p)
        .chain(
            anti_hermitian_basis(d2)
                .into_iter()
                .map(|x2| p * x2.transpose()),
        )
        .collect();

    let mut out = DMatrix::zeros(2 * d1 * d2, columns.len());
    for (c, image) in columns.iter().enumerate() {
        for i in 0..d1 {
            for j in 0..d2 {
                let z = image[(i, j)];
                let row = 2 * (i * d2 + j);
                out[(row, c)] = z.re;
                out[(row + 1, c)] = z.im;
            }
        }
    }
    out
}

/// Dimension of the Lie algebra of the stabilizer of `state`.
///
/// `tol` is relative to the largest singular value of the constraint matrix.
pub fn lie_algebra_dimension(state: &BipartiteState, tol: f64) -> Result<usize> {
    real_nullspace_dimension(&linearized_constraints(state.psi()), tol)
}
