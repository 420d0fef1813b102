//! Local operators act on the coefficient matrix as `A Ψ Bᵀ`; reduced
//! states are `ΨΨ†` and `ΨᵀΨ*`. Both are checked against the full-space
//! Kronecker product here.
//!
//! cargo run --example local_operators

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::{apply_local, partial_trace_1, partial_trace_2, BipartiteState};
use uli::matkernel::{ginibre, haar_unitary, kron};
use uli::ComplexMatrix;

fn as_column(m: &ComplexMatrix) -> uli::Result<ComplexMatrix> {
    let v = m.to_row_major();
    ComplexMatrix::from_row_major(v.len(), 1, v)
}

fn main() -> uli::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (state, norm) = BipartiteState::normalized(ginibre(2, 3, &mut rng))?;
    println!("random 2x3 state, rescaled from norm {norm:.4}");

    let a = haar_unitary(2, &mut rng);
    let b = haar_unitary(3, &mut rng);
    let small = apply_local(&a, &b, &state)?;
    let big = kron(&a, &b)?.matmul(&as_column(state.psi())?)?;
    println!(
        "|A Ψ Bᵀ - (A⊗B) vec Ψ| = {:.2e}",
        as_column(&small)?.max_abs_diff(&big)?
    );

    let rho1 = partial_trace_2(&state);
    let rho2 = partial_trace_1(&state);
    println!(
        "Tr ρ₁ = {:.12}, Tr ρ₂ = {:.12}",
        rho1.trace().re,
        rho2.trace().re
    );
    println!("ρ₁ = {rho1:?}");
    Ok(())
}
