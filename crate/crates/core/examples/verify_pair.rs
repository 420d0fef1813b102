//! Check candidate pairs against the Bell state: the conjugate pair
//! `(U, U*)` works, `(U, U)` generally does not. The commutant test is a
//! necessary condition and is printed alongside.
//!
//! cargo run --example verify_pair

use num_complex::Complex64;
use uli::bipartite::BipartiteState;
use uli::invariance::{commutant_check, is_invariant, UnitaryPair};
use uli::tolerance::{INVARIANCE_TOL, NORM_TOL, UNITARY_TOL};
use uli::ComplexMatrix;

fn main() -> uli::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = BipartiteState::new(
        ComplexMatrix::from_real_row_major(2, 2, &[h, 0.0, 0.0, h])?,
        NORM_TOL,
    )?;
    let s = ComplexMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)])?;

    let candidates = [
        (
            "(S, S*)",
            UnitaryPair::new(s.clone(), s.conj(), UNITARY_TOL)?,
        ),
        (
            "(S, S)",
            UnitaryPair::new(s.clone(), s.clone(), UNITARY_TOL)?,
        ),
    ];
    for (name, pair) in &candidates {
        let inv = is_invariant(pair, &bell, INVARIANCE_TOL)?;
        let comm = commutant_check(pair, &bell, INVARIANCE_TOL)?;
        println!(
            "{name}: residual {:.3e} ({}), commutators {:.1e} / {:.1e}",
            inv.residual,
            if inv.invariant {
                "invariant"
            } else {
                "not invariant"
            },
            comm.residual1,
            comm.residual2,
        );
    }
    // The reduced states of the Bell state are multiples of the identity, so
    // both candidates pass the commutant test: it cannot tell them apart.
    Ok(())
}
