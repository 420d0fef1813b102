//! Draw random local unitary pairs that leave a state unchanged and check
//! each one directly.
//!
//! cargo run --example sample_stabilizer

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::random_state_with_spectrum;
use uli::invariance::{
    group_dimension, invariance_structure, is_invariant, sample_invariant_pairs,
};
use uli::tolerance::{DEGENERACY_TOL, INVARIANCE_TOL, NORM_TOL, RANK_TOL};

fn main() -> uli::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // A degenerate pair plus a smaller coefficient, embedded in 4x3.
    let sigma = [0.4f64.sqrt(), 0.4f64.sqrt(), 0.2f64.sqrt()];
    let state = random_state_with_spectrum(&sigma, 4, 3, NORM_TOL, &mut rng)?;
    let structure = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL)?;

    for block in &structure.support_blocks {
        println!(
            "support block of size {} at σ = {:.4}",
            block.size, block.sigma
        );
    }
    println!(
        "free null blocks: {} on side 1, {} on side 2",
        structure.null_blocks.dim1, structure.null_blocks.dim2
    );
    println!("stabilizer dimension: {}", group_dimension(&structure));

    // One generator per pair keeps the draw independent of iteration order.
    let pairs = sample_invariant_pairs(&structure, 5, |i| {
        let mut r = ChaCha8Rng::seed_from_u64(99);
        r.set_stream(i as u64);
        r
    });
    for (i, pair) in pairs.iter().enumerate() {
        let check = is_invariant(pair, &state, INVARIANCE_TOL)?;
        println!(
            "pair {i}: residual {:.2e}, invariant: {}",
            check.residual, check.invariant
        );
    }
    Ok(())
}
