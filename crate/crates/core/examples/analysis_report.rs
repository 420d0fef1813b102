//! The full text report used by `uli analyze`, built from the library.
//!
//! cargo run --example analysis_report

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::bipartite::random_state_with_spectrum;
use uli::cli::report::analyze;
use uli::tolerance::{Tolerances, NORM_TOL};

fn main() -> uli::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sigma = [0.4f64.sqrt(), 0.2f64.sqrt(), 0.2f64.sqrt(), 0.2f64.sqrt()];
    let state = random_state_with_spectrum(&sigma, 4, 4, NORM_TOL, &mut rng)?;
    let report = analyze(&state, None, &Tolerances::default())?;
    print!("{}", report.to_text());
    Ok(())
}
