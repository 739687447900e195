//! Portable seeded sampling.
//!
//! All randomized operations (validation sampling, stimulus selection, the
//! synthetic corpus) draw from SplitMix64 so that a seed reproduces the same
//! choices on any platform, and in any language that implements the same
//! few lines: bounded draws use rejection sampling on the raw 64-bit
//! output, and subsets come from a partial Fisher-Yates shuffle.

use rand_core::RngCore;
use rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    /// An independent stream for sub-task `stream` of the same seed, so
    /// the picks for one stratum do not depend on the others.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        SeededRng::new(seed ^ stream.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // smallest accepted value making the accepted range a multiple of bound
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % bound;
            }
        }
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `k` distinct indices from `0..n` (clamped to `n`), in draw order.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        let k = k.min(n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_stream() {
        // first outputs of SplitMix64 seeded with 1234567
        let mut rng = SeededRng::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            vec![
                6457827717110365317,
                3203168211198807973,
                9817491932198370423
            ]
        );
    }

    #[test]
    fn sample_indices_distinct_and_clamped() {
        let mut rng = SeededRng::new(7);
        let picked = rng.sample_indices(10, 4);
        assert_eq!(picked.len(), 4);
        let mut sorted = picked.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);
        assert!(picked.iter().all(|i| *i < 10));
        assert_eq!(rng.sample_indices(3, 10).len(), 3);
        assert!(rng.sample_indices(0, 2).is_empty());
    }

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<usize> = SeededRng::new(99).sample_indices(100, 10);
        let b: Vec<usize> = SeededRng::new(99).sample_indices(100, 10);
        assert_eq!(a, b);
        assert_ne!(
            SeededRng::for_stream(99, 0).next_u64(),
            SeededRng::for_stream(99, 1).next_u64()
        );
    }

    #[test]
    fn below_stays_in_range_and_unit_in_interval() {
        let mut rng = SeededRng::new(3);
        for bound in [1u64, 2, 3, 7, 1000, u64::MAX] {
            for _ in 0..100 {
                assert!(rng.below(bound) < bound);
            }
        }
        for _ in 0..1000 {
            let u = rng.unit();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
