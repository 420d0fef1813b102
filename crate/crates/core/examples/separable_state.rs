//! For a product state the stabilizer is a pair of opposite phases on the
//! two factors, times arbitrary unitaries on their orthogonal complements.
//!
//! cargo run --example separable_state

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::BipartiteState;
use uli::cli::report::analyze;
use uli::invariance::{invariance_structure, sample_invariant_pair};
use uli::matkernel::random_unit_vector;
use uli::tolerance::{Tolerances, DEGENERACY_TOL, NORM_TOL, RANK_TOL};
use uli::ComplexMatrix;

fn main() -> uli::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_unit_vector(3, &mut rng);
    let b = random_unit_vector(3, &mut rng);
    let state = BipartiteState::new(ComplexMatrix::from_fn(3, 3, |i, j| a[i] * b[j])?, NORM_TOL)?;

    let report = analyze(&state, None, &Tolerances::default())?;
    println!("{}", report.schmidt_form.0);
    println!("{}", report.schmidt_form.1);
    println!("{}", report.summary());

    let structure = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL)?;
    let pair = sample_invariant_pair(&structure, &mut rng);
    let overlap = |u: &ComplexMatrix, v: &[Complex64]| -> Complex64 {
        (0..v.len())
            .flat_map(|i| (0..v.len()).map(move |j| (i, j)))
            .map(|(i, j)| v[i].conj() * u.get(i, j) * v[j])
            .sum()
    };
    let p1 = overlap(&pair.u1, &a);
    let p2 = overlap(&pair.u2, &b);
    println!(
        "⟨a|U₁|a⟩ = {p1:.6}, ⟨b|U₂|b⟩ = {p2:.6}, product = {:.6}",
        p1 * p2
    );
    Ok(())
}
