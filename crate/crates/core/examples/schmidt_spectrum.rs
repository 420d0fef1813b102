//! Schmidt decomposition of a random state with a prescribed, partly
//! degenerate spectrum, and the degeneracy clusters recovered from it.
//!
//! cargo run --example schmidt_spectrum

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::{cluster_spectrum, random_state_with_spectrum, schmidt_decompose};
use uli::tolerance::{DEGENERACY_TOL, NORM_TOL, RANK_TOL};

fn main() -> uli::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // Squares 0.4, 0.2, 0.2, 0.2: one simple coefficient and a triple.
    let sigma = [0.4f64.sqrt(), 0.2f64.sqrt(), 0.2f64.sqrt(), 0.2f64.sqrt()];
    let state = random_state_with_spectrum(&sigma, 4, 5, NORM_TOL, &mut rng)?;

    let form = schmidt_decompose(&state, RANK_TOL)?;
    println!(
        "state is {}x{}, Schmidt rank {}",
        state.d1(),
        state.d2(),
        form.rank
    );
    println!("coefficients: {:?}", form.sigma);
    println!(
        "reconstruction error: {:.2e}",
        form.reconstruct().max_abs_diff(state.psi())?
    );

    let spectrum = cluster_spectrum(&form.sigma, state.dims(), RANK_TOL, DEGENERACY_TOL)?;
    for c in &spectrum.clusters {
        println!(
            "cluster at {:.6} with multiplicity {}",
            c.value, c.multiplicity
        );
    }
    println!("tuple counts r_k: {:?}", spectrum.r_counts);
    println!("null space dimensions: {:?}", spectrum.null_dims);
    Ok(())
}
