//! Seeded randomness shared by every sampler and by the Monte Carlo harness.
//!
//! A [`RngStream`] is a ChaCha8 generator. Replicate `i` of an experiment with
//! master seed `s` always reads from stream `i` of the generator keyed by `s`,
//! so results do not depend on how replicates are scheduled across workers.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream number `index` under `master_seed`.
    pub fn derive(master_seed: u64, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(index);
        Self { inner }
    }

    /// Uniform integer in `1..=n`.
    #[inline]
    pub fn vertex(&mut self, n: usize) -> usize {
        self.inner.random_range(1..=n)
    }

    /// Uniform integer in `{1..n} \ {excluded}`, without rejection.
    #[inline]
    pub fn vertex_except(&mut self, n: usize, excluded: usize) -> usize {
        debug_assert!(n >= 2);
        let v = self.inner.random_range(1..n);
        if v >= excluded {
            v + 1
        } else {
            v
        }
    }

    /// Uniform integer in `0..bound`.
    #[inline]
    pub fn below(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }

    /// Uniform float in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform random permutation of `1..=n` as a vector (`perm[i - 1]` is the image of `i`).
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (1..=n).collect();
        self.shuffle(&mut perm);
        perm
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.inner.random_range(0..=i);
            items.swap(i, j);
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
