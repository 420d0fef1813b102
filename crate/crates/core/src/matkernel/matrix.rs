use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix with finite entries.
///
/// Constructors take row-major data. The storage is an `nalgebra::DMatrix`,
/// exposed read-only through [`ComplexMatrix::as_dmatrix`].
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &entries))
    }

    /// Builds a matrix from separate real and imaginary parts, both row-major.
    pub fn from_parts(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::EntryCount {
                expected: re.len(),
                actual: im.len(),
            });
        }
        let entries = re
            .iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        Self::from_row_major(rows, cols, entries)
    }

    pub fn from_real_row_major(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_row_major(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Wraps an existing nalgebra matrix after checking shape and finiteness.
    pub fn from_dmatrix(inner: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = inner.shape();
        if rows == 0 || cols == 0 {
            return Err(Error::Empty { rows, cols });
        }
        for j in 0..cols {
            for i in 0..rows {
                let z = inner[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { inner })
    }

    /// Internal constructor for results of arithmetic on already-valid matrices.
    pub(crate) fn wrap(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.nrows() > 0 && inner.ncols() > 0);
        Self { inner }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty { rows, cols });
        }
        Ok(Self::wrap(DMatrix::zeros(rows, cols)))
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty { rows: 0, cols: 0 });
        }
        Ok(Self::wrap(DMatrix::identity(n, n)))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `rows x cols` matrix with `values` on the main diagonal, zero elsewhere.
    pub fn rectangular_diagonal(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        if values.len() > rows.min(cols) {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal values do not fit a {rows}x{cols} matrix",
                values.len()
            )));
        }
        Self::from_fn(rows, cols, |i, j| {
            if i == j && i < values.len() {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::wrap(self.inner.transpose())
    }

    pub fn conj(&self) -> Self {
        Self::wrap(self.inner.map(|z| z.conj()))
    }

    pub fn adjoint(&self) -> Self {
        Self::wrap(self.inner.adjoint())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::wrap(&self.inner * factor)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self::wrap(&self.inner * &rhs.inner))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.require_same_shape(rhs, "add")?;
        Ok(Self::wrap(&self.inner + &rhs.inner))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.require_same_shape(rhs, "subtract")?;
        Ok(Self::wrap(&self.inner - &rhs.inner))
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        if !self.is_square() || self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "commutator needs equal square shapes, got {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self::wrap(
            &self.inner * &rhs.inner - &rhs.inner * &self.inner,
        ))
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.diagonal().iter().sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max-entry distance between two equally shaped matrices.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.require_same_shape(rhs, "compare")?;
        Ok(self
            .inner
            .iter()
            .zip(rhs.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |M^dag M - I|`, or an error for non-square input.
    pub fn unitarity_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "unitary check needs a square matrix, got {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        let n = self.rows();
        let gram = self.inner.adjoint() * &self.inner;
        Ok(Self::wrap(gram - DMatrix::identity(n, n)).max_abs())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation()
            .map(|d| d <= tol)
            .unwrap_or(false)
    }

    /// Copy of the sub-block starting at `(row, col)` with the given shape.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self::wrap(self.inner.view((row, col), (rows, cols)).into_owned())
    }

    /// Block-diagonal direct sum of square blocks.
    pub fn direct_sum(blocks: &[ComplexMatrix]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.rows()).sum();
        if n == 0 {
            return Err(Error::Empty { rows: 0, cols: 0 });
        }
        let mut out = DMatrix::zeros(n, n);
        let mut offset = 0;
        for b in blocks {
            if !b.is_square() {
                return Err(Error::DimensionMismatch(format!(
                    "direct sum blocks must be square, got {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
            out.view_mut((offset, offset), b.shape())
                .copy_from(&b.inner);
            offset += b.rows();
        }
        Ok(Self::wrap(out))
    }

    fn require_same_shape(&self, rhs: &Self, what: &str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs)
            .expect("matrix difference shape mismatch")
    }
}
