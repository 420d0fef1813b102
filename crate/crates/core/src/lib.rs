//! Local unitary stabilizers of bipartite pure states.
//!
//! For a pure state `|Ψ⟩` of a two-part system this crate finds every pair of
//! local unitaries with `U₁ ⊗ U₂ |Ψ⟩ = |Ψ⟩`. The answer is read off the Schmidt
//! decomposition: each cluster of equal nonzero Schmidt coefficients carries
//! a free unitary block, mirrored by its complex conjugate on the other side,
//! and the null spaces of the two reduced states are free and independent.
//!
//! * [`matkernel`]: complex matrices, SVD, Kronecker products, Haar sampling.
//! * [`bipartite`]: states as coefficient matrices, local action, partial
//!   traces, Schmidt decomposition, degeneracy clustering.
//! * [`invariance`]: stabilizer structure, sampling, verification, the
//!   "undo" solver and the dimension cross-check.
//! * [`cli`]: the `uli` command-line tool and its JSON file formats.

pub mod bipartite;
pub mod cli;
pub mod error;
pub mod invariance;
pub mod matkernel;
pub mod tolerance;

pub use error::{Error, Result};
pub use matkernel::ComplexMatrix;
