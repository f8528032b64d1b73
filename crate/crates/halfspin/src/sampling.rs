//! Deterministic sampling for the randomized verification campaigns.
//!
//! Every randomized suite derives its stream from a base seed, a check name,
//! and the `(g, n)` cell it runs in, so campaigns are reproducible row for
//! row regardless of scheduling: two runs with the same seed emit identical
//! reports, and changing one cell's samples cannot shift another's.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Base seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED;

fn fold(hash: u64, byte: u8) -> u64 {
    (hash ^ u64::from(byte)).wrapping_mul(0x0000_0100_0000_01b3)
}

/// Mixes a base seed with a check tag and a `(g, n)` cell (FNV-1a over the
/// tag bytes and the little-endian integers), so each campaign cell owns an
/// independent stream.
pub fn subseed(base: u64, tag: &str, g: u32, n: u64) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &byte in tag.as_bytes() {
        hash = fold(hash, byte);
    }
    for byte in g.to_le_bytes() {
        hash = fold(hash, byte);
    }
    for byte in n.to_le_bytes() {
        hash = fold(hash, byte);
    }
    for byte in base.to_le_bytes() {
        hash = fold(hash, byte);
    }
    hash
}

/// A seeded stream of entry vectors.
pub struct PointSampler(ChaCha8Rng);

impl PointSampler {
    /// Stream for one campaign cell; see [`subseed`].
    pub fn new(seed: u64) -> Self {
        PointSampler(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform draw from `0..bound` (rejection sampling, no modulo bias).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.0.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Uniform entry from `0..=max`.
    pub fn entry(&mut self, max: u64) -> u64 {
        self.below(max + 1)
    }

    /// An entry vector of length `n` with entries in `0..=max`.
    pub fn vector(&mut self, n: usize, max: u64) -> Vec<u64> {
        (0..n).map(|_| self.entry(max)).collect()
    }

    /// An entry vector with at least one zero at a uniformly chosen position.
    pub fn vector_with_zero(&mut self, n: usize, max: u64) -> Vec<u64> {
        let position = self.below(n as u64) as usize;
        let mut v = self.vector(n, max);
        v[position] = 0;
        v
    }

    /// An entry vector whose total avoids `forbidden_total` (resampled until
    /// it does).
    pub fn vector_off_simplex(&mut self, n: usize, max: u64, forbidden_total: u64) -> Vec<u64> {
        loop {
            let v = self.vector(n, max);
            if v.iter().sum::<u64>() != forbidden_total {
                return v;
            }
        }
    }
}
