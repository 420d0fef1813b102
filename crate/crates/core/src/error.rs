use thiserror::Error;

/// Errors raised by the numerical kernels and the state/operator constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    Empty { rows: usize, cols: usize },

    #[error("expected {expected} entries, got {actual}")]
    EntryCount { expected: usize, actual: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state is not normalized: norm = {norm:.17e}")]
    NotNormalized { norm: f64 },

    #[error("SVD did not converge")]
    ConvergenceFailure,

    #[error("result would have {entries} entries, above the cap of {cap}")]
    DimensionOverflow { entries: usize, cap: usize },

    #[error("singular values are not sorted in non-increasing order at index {index}")]
    NotSorted { index: usize },

    #[error("bad spectrum: {0}")]
    BadSpectrum(String),

    #[error("matrix is not unitary: max |U^dag U - I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
