//! Fixtures shared by the benchmarks.

use karpelevic_core::algebra::{rat, RatMatrix, StochMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded random stochastic matrix with small-denominator entries; each
/// entry is zero with probability `sparsity`.
pub fn random_stochastic(seed: u64, n: usize, sparsity: f64) -> StochMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| {
            let mut raw: Vec<i64> = (0..n)
                .map(|_| if rng.gen_bool(sparsity) { 0 } else { rng.gen_range(1..=9) })
                .collect();
            if raw.iter().all(|&v| v == 0) {
                raw[rng.gen_range(0..n)] = 1;
            }
            let total: i64 = raw.iter().sum();
            raw.iter().map(|&v| rat(v, total)).collect()
        })
        .collect();
    StochMatrix::new(RatMatrix::from_rows(rows).expect("square rows")).expect("rows sum to one")
}
