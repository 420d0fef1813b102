//! Stabilizer dimension from the block structure, cross-checked by the
//! dimension of the linearized constraint space.
//!
//! cargo run --example group_dimension

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::random_state_with_spectrum;
use uli::invariance::{group_dimension, invariance_structure, lie_algebra_dimension};
use uli::tolerance::{DEGENERACY_TOL, NORM_TOL, NULLSPACE_TOL, RANK_TOL};

fn main() -> uli::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases: [(&str, usize, usize, Vec<f64>); 5] = [
        ("Bell 2x2", 2, 2, vec![0.5f64.sqrt(); 2]),
        ("product 2x2", 2, 2, vec![1.0]),
        ("unequal 2x2", 2, 2, vec![0.8f64.sqrt(), 0.2f64.sqrt()]),
        ("maximally entangled 4x4", 4, 4, vec![0.5; 4]),
        (
            "pair + single in 3x5",
            3,
            5,
            vec![0.4f64.sqrt(), 0.4f64.sqrt(), 0.2f64.sqrt()],
        ),
    ];
    println!("{:<26} {:>6} {:>6}", "state", "group", "lie");
    for (name, d1, d2, sigma) in cases {
        let state = random_state_with_spectrum(&sigma, d1, d2, NORM_TOL, &mut rng)?;
        let structure = invariance_structure(&state, RANK_TOL, DEGENERACY_TOL)?;
        let group = group_dimension(&structure);
        let lie = lie_algebra_dimension(&state, NULLSPACE_TOL)?;
        println!("{name:<26} {group:>6} {lie:>6}");
    }
    Ok(())
}
