//! Counter-mode Rademacher signs.
//!
//! The sign with index i under (seed, stream) is bit i mod 32 of ChaCha8
//! output word ⌊i/32⌋, so any index is addressable without generating the
//! prefix and results do not depend on how work is split across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Stream ids keep different consumers of the same seed independent.
pub const STREAM_MU_RAND: u64 = 1;
pub const STREAM_RANDOM_SHIFT: u64 = 2;
pub const STREAM_TRIALS: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterSigns {
    seed: u64,
    stream: u64,
}

impl CounterSigns {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    fn rng_at(&self, word: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos(u128::from(word));
        rng
    }

    /// Raw output words starting at word index `word`.
    pub fn words(&self, word: u64) -> impl Iterator<Item = u32> {
        let mut rng = self.rng_at(word);
        std::iter::repeat_with(move || rng.next_u32())
    }

    pub fn sign(&self, index: u64) -> i8 {
        let w = self.rng_at(index / 32).next_u32();
        if (w >> (index % 32)) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    /// Signs for indices start, start+1, … written into `out`.
    pub fn fill(&self, start: u64, out: &mut [i8]) {
        let mut words = self.words(start / 32);
        let mut bit = (start % 32) as u32;
        let mut w = words.next().unwrap_or_default();
        for s in out.iter_mut() {
            if bit == 32 {
                w = words.next().unwrap_or_default();
                bit = 0;
            }
            *s = if (w >> bit) & 1 == 1 { 1 } else { -1 };
            bit += 1;
        }
    }

    /// Σ_{i<m} ε_i over indices 0..m, by popcount.
    pub fn rademacher_sum(&self, m: u64) -> i64 {
        let full = m / 32;
        let rem = (m % 32) as u32;
        let mut ones: u64 = 0;
        let mut words = self.words(0);
        for _ in 0..full {
            ones += u64::from(words.next().unwrap_or_default().count_ones());
        }
        if rem > 0 {
            let w = words.next().unwrap_or_default() & ((1u32 << rem) - 1);
            ones += u64::from(w.count_ones());
        }
        2 * ones as i64 - m as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_matches_pointwise() {
        let s = CounterSigns::new(42, STREAM_MU_RAND);
        let mut out = vec![0i8; 200];
        s.fill(77, &mut out);
        for (i, &v) in out.iter().enumerate() {
            assert_eq!(v, s.sign(77 + i as u64));
        }
    }

    #[test]
    fn sum_matches_fill() {
        let s = CounterSigns::new(7, STREAM_TRIALS + 3);
        for m in [1u64, 31, 32, 33, 1000] {
            let mut out = vec![0i8; m as usize];
            s.fill(0, &mut out);
            assert_eq!(s.rademacher_sum(m), out.iter().map(|&x| i64::from(x)).sum::<i64>());
        }
    }

    #[test]
    fn streams_and_seeds_differ() {
        let mut a = vec![0i8; 256];
        let mut b = vec![0i8; 256];
        CounterSigns::new(1, STREAM_MU_RAND).fill(0, &mut a);
        CounterSigns::new(1, STREAM_RANDOM_SHIFT).fill(0, &mut b);
        assert_ne!(a, b);
        CounterSigns::new(2, STREAM_MU_RAND).fill(0, &mut b);
        assert_ne!(a, b);
    }
}
