//! Default numerical thresholds. Every public routine that makes a numerical
//! decision takes its threshold as an argument; these are the values the CLI
//! and the convenience wrappers fall back to.

/// Allowed deviation of `Tr[Ψ^dag Ψ]` from 1.
pub const NORM_TOL: f64 = 1e-10;

/// Singular values at or below `RANK_TOL * σ_max` count as zero.
pub const RANK_TOL: f64 = 1e-10;

/// Neighbouring singular values closer than `DEGENERACY_TOL * σ_max` are equal.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Max-entry residual accepted by the invariance and commutant checks.
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Allowed `max |U^dag U - I|` for inputs that must be unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Relative singular-value cutoff for the Lie-algebra nullspace count.
pub const NULLSPACE_TOL: f64 = 1e-10;

/// The full set of thresholds used by the structural analysis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub norm: f64,
    pub rank: f64,
    pub degeneracy: f64,
    pub invariance: f64,
    pub unitary: f64,
    pub nullspace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: NORM_TOL,
            rank: RANK_TOL,
            degeneracy: DEGENERACY_TOL,
            invariance: INVARIANCE_TOL,
            unitary: UNITARY_TOL,
            nullspace: NULLSPACE_TOL,
        }
    }
}
