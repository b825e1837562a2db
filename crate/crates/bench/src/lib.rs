//! Seeded inputs shared by the benchmarks.

use coverkit::random::{random_monotone, random_strong_idempotent, rng_from_seed};
use coverkit::{CoverSystem, Relation};

pub const SEED: u64 = 2024;

/// `count` random monotone relations on `n` elements.
pub fn monotone_relations(n: usize, count: usize) -> Vec<Relation> {
    let mut rng = rng_from_seed(SEED);
    (0..count).map(|_| random_monotone(&mut rng, n)).collect()
}

/// `count` random strong idempotents on `n` elements.
pub fn strong_idempotents(n: usize, count: usize) -> Vec<CoverSystem> {
    let mut rng = rng_from_seed(SEED ^ n as u64);
    (0..count).map(|_| random_strong_idempotent(&mut rng, n)).collect()
}
