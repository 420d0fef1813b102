use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;

/// Matrix of i.i.d. standard complex Gaussians, `E|z|^2 = 1`.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(rows > 0 && cols > 0, "ginibre dimensions must be positive");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    // fill in row-major order so the draw sequence matches the logical layout
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        entries.push(Complex64::new(re * scale, im * scale));
    }
    ComplexMatrix::wrap(DMatrix::from_row_slice(rows, cols, &entries))
}

/// Haar-distributed `n x n` unitary.
///
/// Ginibre matrix, Householder QR, then the columns of `Q` are rotated by the
/// phases of `diag(R)` so that the implied triangular factor has a positive
/// diagonal. That makes the factorization unique and the result Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n > 0, "unitary dimension must be positive");
    let z = ginibre(n, n, rng).into_dmatrix();
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        let phase = if norm > 0.0 {
            d / norm
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::wrap(q)
}

/// Haar-random unit vector of length `n`.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let g = ginibre(n, 1, rng).to_row_major();
    let norm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    g.into_iter().map(|z| z / norm).collect()
}
