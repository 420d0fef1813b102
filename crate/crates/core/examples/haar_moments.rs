//! Haar-random unitaries: unitarity and the first moments of one entry,
//! E|U₁₁|² = 1/n and E|U₁₁|⁴ = 2/(n(n+1)).
//!
//! cargo run --release --example haar_moments

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uli::matkernel::haar_unitary;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let samples = 20_000;
    for n in [2usize, 3, 5] {
        let (mut m2, mut m4, mut worst) = (0.0, 0.0, 0.0f64);
        for _ in 0..samples {
            let u = haar_unitary(n, &mut rng);
            let p = u.get(0, 0).norm_sqr();
            m2 += p;
            m4 += p * p;
            worst = worst.max(u.unitarity_deviation().unwrap());
        }
        let k = samples as f64;
        println!(
            "n={n}: E|U11|^2 = {:.4} (exact {:.4}), E|U11|^4 = {:.4} (exact {:.4}), max |U†U - I| = {worst:.1e}",
            m2 / k,
            1.0 / n as f64,
            m4 / k,
            2.0 / (n * (n + 1)) as f64
        );
    }
}
