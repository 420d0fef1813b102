//! Full singular value decomposition with a deterministic phase convention.
//!
//! One-sided (Hestenes) Jacobi on the columns of the matrix, or of its
//! adjoint when it is wide. Jacobi is slow for large inputs but the matrices
//! here are small, and it keeps small singular values relatively accurate and
//! the singular vectors orthogonal even for rank-deficient input.
//!
//! After the iteration the thin factor is completed to a full unitary, the
//! values are sorted in non-increasing order, and each left singular vector is
//! rotated so that its first entry of largest modulus is real and positive
//! (the matching right vector absorbs the conjugate phase). Identical input
//! always yields identical output.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// `m = u * diag(sigma) * v^dag` with full unitary `u` and `v`.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    /// Non-negative, non-increasing, length `min(rows, cols)`.
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdResult {
    /// Rebuilds `u * Σ * v^dag` with `Σ` the rectangular diagonal of `sigma`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let sigma = ComplexMatrix::rectangular_diagonal(self.u.cols(), self.v.cols(), &self.sigma)
            .expect("sigma fits by construction");
        &(&self.u * &sigma) * &self.v.adjoint()
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);

    // tall case: A V = U Σ; wide case: factor A^dag and swap the roles
    let (thin_u, sigma, thin_v) = if rows >= cols {
        jacobi(m.as_dmatrix().clone(), true)?
    } else {
        let (u, s, v) = jacobi(m.as_dmatrix().adjoint(), true)?;
        (v.expect("vectors requested"), s, Some(u))
    };
    let thin_v = thin_v.expect("vectors requested");

    let mut u = complete_orthonormal(thin_u);
    let mut v = complete_orthonormal(thin_v);

    for col in 0..rows {
        let phase = leading_phase(&u, col);
        u.column_mut(col).scale_mut_complex(phase.conj());
        if col < k {
            v.column_mut(col).scale_mut_complex(phase.conj());
        }
    }

    Ok(SvdResult {
        u: ComplexMatrix::wrap(u),
        sigma,
        v: ComplexMatrix::wrap(v),
    })
}

/// Singular values only, non-increasing.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let a = if m.rows() >= m.cols() {
        m.as_dmatrix().clone()
    } else {
        m.as_dmatrix().adjoint()
    };
    Ok(jacobi(a, false)?.1)
}

/// Singular values of a real matrix, non-increasing.
pub fn real_singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if m.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(pos) = m.iter().position(|x| !x.is_finite()) {
        // column-major position
        return Err(Error::NonFinite {
            row: pos % m.nrows(),
            col: pos / m.nrows(),
        });
    }
    let a = if m.nrows() >= m.ncols() {
        m.clone()
    } else {
        m.transpose()
    };
    real_jacobi_values(
        a.column_iter()
            .map(|c| c.iter().copied().collect())
            .collect(),
    )
}

/// One-sided Jacobi on real columns, values only. Same sweep and skip rules
/// as the complex version, on plain slices so it stays cheap for the
/// Lie-algebra constraint matrices.
fn real_jacobi_values(mut cols: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let n = cols.len();
    let tol = f64::EPSILON * cols.first().map_or(1, Vec::len) as f64;
    let total: f64 = cols.iter().map(|c| dot(c, c)).sum();
    let floor = f64::EPSILON * f64::EPSILON * total;
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            let (head, tail) = cols.split_at_mut(p + 1);
            let cp = &mut head[p];
            for cq in tail.iter_mut() {
                let alpha = dot(cp, cp);
                let beta = dot(cq, cq);
                let gamma = dot(cp, cq);
                if alpha.min(beta) <= floor || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let (xp, yq) = (*x, *y);
                    *x = c * xp - s * yq;
                    *y = s * xp + c * yq;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }
    let mut sigma: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    Ok(sigma)
}

type ThinFactors = (DMatrix<Complex64>, Vec<f64>, Option<DMatrix<Complex64>>);

/// One-sided Jacobi on a tall (`rows >= cols`) matrix. Returns the thin left
/// factor (columns belonging to negligible singular values are dropped, to be
/// filled by completion), the sorted singular values, and optionally the full
/// right factor.
fn jacobi(mut a: DMatrix<Complex64>, want_vectors: bool) -> Result<ThinFactors> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut v: DMatrix<Complex64> = DMatrix::identity(n, n);
    // Pairs closer to orthogonal than this are left alone. A bare machine
    // epsilon lets a single pair ping-pong on roundoff forever.
    let tol = f64::EPSILON * m as f64;
    // columns below this squared norm are roundoff and left alone
    let floor = (f64::EPSILON * a.norm()).powi(2);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if alpha.min(beta) <= floor || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut a, p, q, c, s, phase);
                if want_vectors {
                    rotate_columns(&mut v, p, q, c, s, phase);
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }

    let norms: Vec<f64> = (0..n).map(|j| a.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    if !want_vectors {
        return Ok((DMatrix::zeros(m, 0), sigma, None));
    }

    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let negligible = sigma_max * f64::EPSILON * m as f64;
    let kept: Vec<DVector<Complex64>> = order
        .iter()
        .filter(|&&j| norms[j] > negligible && norms[j] > 0.0)
        .map(|&j| a.column(j) / Complex64::new(norms[j], 0.0))
        .collect();
    let u = if kept.is_empty() {
        DMatrix::zeros(m, 0)
    } else {
        DMatrix::from_columns(&kept)
    };
    let v = DMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((u, sigma, Some(v)))
}

/// `col_p <- c col_p - s e^{iθ} col_q`, `col_q <- s col_p + c e^{iθ} col_q`
/// where `phase = e^{iθ}`. The 2x2 transform is unitary.
fn rotate_columns(
    m: &mut DMatrix<Complex64>,
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    phase: Complex64,
) {
    for i in 0..m.nrows() {
        let x = m[(i, p)];
        let y = m[(i, q)] * phase;
        m[(i, p)] = x * c - y * s;
        m[(i, q)] = x * s + y * c;
    }
}

fn complete_orthonormal(q: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = q.nrows();
    let mut basis: Vec<DVector<Complex64>> = q.column_iter().map(|c| c.into_owned()).collect();
    while basis.len() < n {
        let mut best: Option<(f64, DVector<Complex64>)> = None;
        for i in 0..n {
            let mut e = DVector::<Complex64>::zeros(n);
            e[i] = Complex64::new(1.0, 0.0);
            // two passes of classical Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let proj = b.dotc(&e);
                    e -= b * proj;
                }
            }
            let norm = e.norm();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, e));
            }
        }
        let (norm, e) = best.expect("n > 0");
        basis.push(e / Complex64::new(norm, 0.0));
    }
    DMatrix::from_columns(&basis)
}

fn leading_phase(u: &DMatrix<Complex64>, col: usize) -> Complex64 {
    let column = u.column(col);
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in column.iter().enumerate() {
        let a = z.norm();
        if a > best_abs {
            best_abs = a;
            best = i;
        }
    }
    let z = column[best];
    if best_abs > 0.0 {
        z / best_abs
    } else {
        Complex64::new(1.0, 0.0)
    }
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, factor: Complex64);
}

impl<S> ScaleComplex for nalgebra::Matrix<Complex64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<Complex64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, factor: Complex64) {
        for z in self.iter_mut() {
            *z *= factor;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::random::ginibre;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(m: &ComplexMatrix, tol: f64) -> SvdResult {
        let r = svd(m).unwrap();
        assert_eq!(r.u.shape(), (m.rows(), m.rows()));
        assert_eq!(r.v.shape(), (m.cols(), m.cols()));
        assert_eq!(r.sigma.len(), m.rows().min(m.cols()));
        assert!(r.u.unitarity_deviation().unwrap() < 1e-13);
        assert!(r.v.unitarity_deviation().unwrap() < 1e-13);
        assert!(r.sigma.windows(2).all(|w| w[0] >= w[1]));
        assert!(r.sigma.iter().all(|&s| s >= 0.0));
        let err = r.reconstruct().max_abs_diff(m).unwrap();
        assert!(
            err <= tol * r.sigma_max().max(1.0),
            "reconstruction error {err}"
        );
        r
    }

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::from_real_row_major(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = check(&m, 1e-15);
        assert_eq!(r.sigma, vec![1.0, 0.0]);
    }

    #[test]
    fn scaled_identity() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::from_real_row_major(2, 2, &[h, 0.0, 0.0, h]).unwrap();
        let r = check(&m, 1e-15);
        assert!((r.sigma[0] - h).abs() < 1e-15 && (r.sigma[1] - h).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let m = ComplexMatrix::zeros(3, 2).unwrap();
        let r = check(&m, 0.0);
        assert_eq!(r.sigma, vec![0.0, 0.0]);
    }

    #[test]
    fn random_rectangular_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (rows, cols) in [(3, 4), (4, 3), (1, 5), (5, 1), (6, 6)] {
            let m = ginibre(rows, cols, &mut rng);
            check(&m, 1e-12);
        }
    }

    #[test]
    fn rank_deficient_completion_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = ginibre(5, 1, &mut rng);
        let b = ginibre(1, 4, &mut rng);
        let m = &a * &b;
        let r = check(&m, 1e-12);
        assert!(r.sigma[1] < 1e-12 * r.sigma[0]);
    }

    #[test]
    fn phase_convention_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = ginibre(3, 3, &mut rng);
        let a = svd(&m).unwrap();
        let b = svd(&m).unwrap();
        assert_eq!(a.u, b.u);
        assert_eq!(a.v, b.v);
        for col in 0..3 {
            let column: Vec<Complex64> = (0..3).map(|i| a.u.get(i, col)).collect();
            let max = column.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let lead = column.iter().find(|z| z.norm() == max).unwrap();
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn real_singular_values_of_rank_one() {
        let m = DMatrix::from_fn(4, 4, |i, j| ((i + 1) * (j + 2)) as f64);
        let s = real_singular_values(&m).unwrap();
        assert!(s[1] < 1e-12 * s[0]);
    }

    #[test]
    fn real_path_matches_complex_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (rows, cols) in [(7, 4), (4, 7), (6, 6)] {
            let c = ginibre(rows, cols, &mut rng);
            let re = c.as_dmatrix().map(|z| z.re);
            let real = real_singular_values(&re).unwrap();
            let complex =
                singular_values(&ComplexMatrix::from_dmatrix(re.map(|x| x.into())).unwrap())
                    .unwrap();
            for (a, b) in real.iter().zip(&complex) {
                assert!((a - b).abs() < 1e-13, "{a} vs {b}");
            }
        }
    }
}
