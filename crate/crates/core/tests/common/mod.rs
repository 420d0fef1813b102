#![allow(dead_code)]

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use uli::bipartite::{random_state_with_spectrum, BipartiteState};
use uli::tolerance::NORM_TOL;
use uli::ComplexMatrix;

/// Schmidt coefficients with `rank` nonzero entries grouped into clusters of
/// exactly equal values. Distinct cluster levels sit on a grid, so
/// neighbouring clusters differ by at least 4% of the largest value.
pub fn random_spectrum<R: Rng>(rng: &mut R, rank: usize, allow_degenerate: bool) -> Vec<f64> {
    let mut multiplicities = Vec::new();
    let mut left = rank;
    while left > 0 {
        let m = if allow_degenerate && rng.random_bool(0.5) {
            rng.random_range(1..=left)
        } else {
            1
        };
        multiplicities.push(m);
        left -= m;
    }
    let mut levels: Vec<usize> = (0..20).collect();
    levels.shuffle(rng);
    let mut sigma: Vec<f64> = multiplicities
        .iter()
        .zip(&levels)
        .flat_map(|(&m, &level)| std::iter::repeat_n(0.2 + 0.04 * level as f64, m))
        .collect();
    let norm = sigma.iter().map(|s| s * s).sum::<f64>().sqrt();
    sigma.iter_mut().for_each(|s| *s /= norm);
    sigma.sort_by(|a, b| b.total_cmp(a));
    sigma
}

/// Random state in `d1 x d2` with random rank and the spectrum above.
pub fn random_structured_state<R: Rng>(
    rng: &mut R,
    d1: usize,
    d2: usize,
    allow_degenerate: bool,
) -> (BipartiteState, Vec<f64>) {
    let rank = rng.random_range(1..=d1.min(d2));
    let sigma = random_spectrum(rng, rank, allow_degenerate);
    let state = random_state_with_spectrum(&sigma, d1, d2, NORM_TOL, rng).unwrap();
    (state, sigma)
}

/// Givens rotation on indices `i`, `j` of an `n`-dimensional space.
pub fn givens(n: usize, i: usize, j: usize, theta: f64, phase: f64) -> ComplexMatrix {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, phase);
    ComplexMatrix::from_fn(n, n, |r, k| {
        if (r, k) == (i, i) || (r, k) == (j, j) {
            Complex64::new(c, 0.0)
        } else if (r, k) == (i, j) {
            -e.conj() * s
        } else if (r, k) == (j, i) {
            e * s
        } else if r == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .unwrap()
}

/// Column vector from amplitudes.
pub fn column(v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_row_major(v.len(), 1, v.to_vec()).unwrap()
}

/// Brute-force partial traces of `|a⟩⟩⟨⟨b|` built on the full space:
/// returns `(Tr₂, Tr₁)`.
pub fn brute_partial_traces(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> (ComplexMatrix, ComplexMatrix) {
    let (d1, d2) = a.shape();
    let va = a.to_row_major();
    let vb = b.to_row_major();
    let idx = |i: usize, j: usize| i * d2 + j;
    let rho = |x: usize, y: usize| va[x] * vb[y].conj();
    let tr2 = ComplexMatrix::from_fn(d1, d1, |i, k| {
        (0..d2).map(|j| rho(idx(i, j), idx(k, j))).sum()
    })
    .unwrap();
    let tr1 = ComplexMatrix::from_fn(d2, d2, |j, l| {
        (0..d1).map(|i| rho(idx(i, j), idx(i, l))).sum()
    })
    .unwrap();
    (tr2, tr1)
}

/// Line printed by every acceptance criterion.
pub fn report(id: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "[{}] criterion {id}: {name} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
}
