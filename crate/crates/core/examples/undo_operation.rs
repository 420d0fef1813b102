//! Undo a local operation on subsystem 1 with one on subsystem 2, and see
//! when that is impossible.
//!
//! cargo run --example undo_operation

use uli::bipartite::BipartiteState;
use uli::invariance::{undo_for_state, UndoOutcome};
use uli::tolerance::{Tolerances, NORM_TOL};
use uli::ComplexMatrix;

fn main() -> uli::Result<()> {
    let tols = Tolerances::default();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = ComplexMatrix::from_real_row_major(2, 2, &[h, h, h, -h])?;

    let bell = BipartiteState::new(
        ComplexMatrix::from_real_row_major(2, 2, &[h, 0.0, 0.0, h])?,
        NORM_TOL,
    )?;
    if let UndoOutcome::Solved(pair) = undo_for_state(&hadamard, &bell, &tols)? {
        println!("Bell state: H on side 1 is undone by {:?}", pair.u2);
    }

    // Unequal coefficients: H mixes the two Schmidt vectors, nothing on
    // side 2 can repair that.
    let skew = BipartiteState::new(
        ComplexMatrix::from_real_row_major(2, 2, &[0.8f64.sqrt(), 0.0, 0.0, 0.2f64.sqrt()])?,
        NORM_TOL,
    )?;
    match undo_for_state(&hadamard, &skew, &tols)? {
        UndoOutcome::Solved(_) => println!("unexpected: skewed state was repaired"),
        UndoOutcome::NoSolution { off_block_mass } => {
            println!("skewed state: no partner, off-block mass {off_block_mass:.4}")
        }
    }
    Ok(())
}
