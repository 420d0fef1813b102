//! JSON file formats.
//!
//! Matrices are stored as separate real and imaginary parts, each a list of
//! rows. Numbers are written in shortest round-trip form, so a matrix read
//! back from a file written here is bit-identical.
//!
//! ```json
//! { "d1": 2, "d2": 2, "re": [[0.7071067811865476, 0.0], [0.0, 0.7071067811865476]],
//!   "im": [[0.0, 0.0], [0.0, 0.0]] }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteState;
use crate::invariance::UnitaryPair;
use crate::matkernel::{svd, ComplexMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub d1: usize,
    pub d2: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub u1: UnitaryFile,
    pub u2: UnitaryFile,
}

/// Output of `sample`: the pairs together with the parameters that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub d1: usize,
    pub d2: usize,
    pub seed: u64,
    pub pairs: Vec<PairEntry>,
}

/// Input problems; the CLI maps these to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Numeric(#[from] crate::Error),
}

fn split(m: &ComplexMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let rows = |f: fn(num_complex::Complex64) -> f64| {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| f(m.get(i, j))).collect())
            .collect()
    };
    (rows(|z| z.re), rows(|z| z.im))
}

fn join(
    rows: usize,
    cols: usize,
    re: &[Vec<f64>],
    im: &[Vec<f64>],
    what: &str,
) -> Result<ComplexMatrix, FileError> {
    let shape_ok =
        |parts: &[Vec<f64>]| parts.len() == rows && parts.iter().all(|r| r.len() == cols);
    if !shape_ok(re) || !shape_ok(im) {
        return Err(FileError::Invalid(format!(
            "{what}: re and im must both be {rows}x{cols} lists of rows"
        )));
    }
    let re: Vec<f64> = re.concat();
    let im: Vec<f64> = im.concat();
    Ok(ComplexMatrix::from_parts(rows, cols, &re, &im)?)
}

impl StateFile {
    pub fn from_matrix(psi: &ComplexMatrix) -> Self {
        let (re, im) = split(psi);
        Self {
            d1: psi.rows(),
            d2: psi.cols(),
            re,
            im,
        }
    }

    pub fn from_state(state: &BipartiteState) -> Self {
        Self::from_matrix(state.psi())
    }

    pub fn matrix(&self) -> Result<ComplexMatrix, FileError> {
        join(self.d1, self.d2, &self.re, &self.im, "state")
    }

    /// Builds the state, rejecting unnormalized input unless `normalize` is
    /// set. Returns the original norm when rescaling happened.
    pub fn to_state(
        &self,
        normalize: bool,
        norm_tol: f64,
    ) -> Result<(BipartiteState, Option<f64>), FileError> {
        let psi = self.matrix()?;
        if normalize {
            let (state, norm) = BipartiteState::normalized(psi)?;
            Ok((state, Some(norm)))
        } else {
            Ok((BipartiteState::new(psi, norm_tol)?, None))
        }
    }
}

/// A unitary read from a file, possibly repaired.
#[derive(Clone, Debug)]
pub struct LoadedUnitary {
    pub matrix: ComplexMatrix,
    /// Max-entry change made by re-unitarization, if any was needed.
    pub correction: Option<f64>,
}

impl UnitaryFile {
    pub fn from_matrix(u: &ComplexMatrix) -> Self {
        let (re, im) = split(u);
        Self {
            n: u.rows(),
            re,
            im,
        }
    }

    pub fn matrix(&self) -> Result<ComplexMatrix, FileError> {
        join(self.n, self.n, &self.re, &self.im, "unitary")
    }

    /// Checks unitarity within `tol`. With `lenient`, a non-unitary matrix is
    /// replaced by the unitary factor of its polar decomposition instead.
    pub fn to_unitary(&self, tol: f64, lenient: bool) -> Result<LoadedUnitary, FileError> {
        let m = self.matrix()?;
        let deviation = m.unitarity_deviation()?;
        if deviation <= tol {
            return Ok(LoadedUnitary {
                matrix: m,
                correction: None,
            });
        }
        if !lenient {
            return Err(crate::Error::NotUnitary { deviation }.into());
        }
        let unitary = polar_unitary(&m)?;
        let correction = unitary.max_abs_diff(&m)?;
        Ok(LoadedUnitary {
            matrix: unitary,
            correction: Some(correction),
        })
    }
}

/// Closest unitary in Frobenius norm: `W V^dag` from `M = W Σ V^dag`.
pub fn polar_unitary(m: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    let dec = svd(m)?;
    dec.u.matmul(&dec.v.adjoint())
}

impl PairEntry {
    pub fn from_pair(pair: &UnitaryPair) -> Self {
        Self {
            u1: UnitaryFile::from_matrix(&pair.u1),
            u2: UnitaryFile::from_matrix(&pair.u2),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_text(path: &str) -> Result<String, FileError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|source| {
            FileError::Io {
                path: "<stdin>".into(),
                source,
            }
        })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.into(),
        source,
    })
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|source| FileError::Json {
        path: path.into(),
        source,
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, FileError> {
    parse_json(&read_text(path)?, path)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FileError> {
    std::fs::write(path, text).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}
