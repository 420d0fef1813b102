//! Dense complex linear algebra used by the rest of the crate.

mod matrix;
mod random;
mod svd;

use nalgebra::DMatrix;

pub use matrix::ComplexMatrix;
pub use random::{ginibre, haar_unitary, random_unit_vector};
pub use svd::{real_singular_values, singular_values, svd, SvdResult};

use crate::error::{Error, Result};

/// Default entry cap for [`kron`]: 2^20 entries.
pub const DEFAULT_KRON_CAP: usize = 1 << 20;

/// Kronecker product `a ⊗ b`, refusing results above [`DEFAULT_KRON_CAP`] entries.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DEFAULT_KRON_CAP)
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let rows = a.rows().checked_mul(b.rows());
    let cols = a.cols().checked_mul(b.cols());
    let entries = rows.zip(cols).and_then(|(r, c)| r.checked_mul(c));
    match entries {
        Some(n) if n <= cap => {}
        Some(n) => return Err(Error::DimensionOverflow { entries: n, cap }),
        None => {
            return Err(Error::DimensionOverflow {
                entries: usize::MAX,
                cap,
            })
        }
    }
    Ok(ComplexMatrix::wrap(
        a.as_dmatrix().kronecker(b.as_dmatrix()),
    ))
}

/// Number of (right) null directions of a real matrix: `cols` minus the count
/// of singular values above `tol * σ_max` (or above `tol` when `σ_max = 0`).
///
/// For square input this is the number of singular values below the threshold.
pub fn real_nullspace_dimension(coeffs: &DMatrix<f64>, tol: f64) -> Result<usize> {
    let sigma = real_singular_values(coeffs)?;
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let threshold = if sigma_max > 0.0 {
        tol * sigma_max
    } else {
        tol
    };
    let rank = sigma.iter().filter(|&&s| s > threshold).count();
    Ok(coeffs.ncols() - rank)
}
