use serde::Serialize;

use super::UnitaryPair;
use crate::bipartite::{
    apply_local, matrix_to_vec, partial_trace_1, partial_trace_2, BipartiteState,
};
use crate::error::{Error, Result};
use crate::matkernel::{kron, ComplexMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvarianceCheck {
    pub invariant: bool,
    /// `max |U₁ Ψ U₂ᵀ - Ψ|`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommutantCheck {
    pub side1: bool,
    pub side2: bool,
    /// `max |[U₁, ϱ₁]|` with `ϱ₁ = Ψ Ψ^dag`.
    pub residual1: f64,
    /// `max |[U₂, ϱ₂]|` with `ϱ₂ = Ψᵀ Ψ*`.
    pub residual2: f64,
}

impl CommutantCheck {
    pub fn both(&self) -> bool {
        self.side1 && self.side2
    }
}

/// Strict invariance test `U₁ ⊗ U₂ |Ψ⟩ = |Ψ⟩`, through `U₁ Ψ U₂ᵀ = Ψ`.
pub fn is_invariant(
    pair: &UnitaryPair,
    state: &BipartiteState,
    tol: f64,
) -> Result<InvarianceCheck> {
    let moved = apply_local(&pair.u1, &pair.u2, state)?;
    let residual = moved.max_abs_diff(state.psi())?;
    Ok(InvarianceCheck {
        invariant: residual <= tol,
        residual,
    })
}

/// Same residual as [`is_invariant`], computed on the full state vector with
/// an explicit `U₁ ⊗ U₂`. Quadratic in the total dimension; for cross-checks.
pub fn kron_residual(pair: &UnitaryPair, state: &BipartiteState) -> Result<f64> {
    let (d1, d2) = state.dims();
    if pair.dims() != (d1, d2) {
        return Err(dims_error(pair, state));
    }
    let full = kron(&pair.u1, &pair.u2)?;
    let v = ComplexMatrix::from_row_major(d1 * d2, 1, matrix_to_vec(state))?;
    (&full * &v).max_abs_diff(&v)
}

/// Necessary condition for invariance: each `U_j` commutes with the reduced
/// state `ϱ_j` of its subsystem.
pub fn commutant_check(
    pair: &UnitaryPair,
    state: &BipartiteState,
    tol: f64,
) -> Result<CommutantCheck> {
    if pair.dims() != state.dims() {
        return Err(dims_error(pair, state));
    }
    let residual1 = pair.u1.commutator(&partial_trace_2(state))?.max_abs();
    let residual2 = pair.u2.commutator(&partial_trace_1(state))?.max_abs();
    Ok(CommutantCheck {
        side1: residual1 <= tol,
        side2: residual2 <= tol,
        residual1,
        residual2,
    })
}

fn dims_error(pair: &UnitaryPair, state: &BipartiteState) -> Error {
    let (a, b) = pair.dims();
    let (d1, d2) = state.dims();
    Error::DimensionMismatch(format!("pair acts on {a}x{b}, state is {d1}x{d2}"))
}
