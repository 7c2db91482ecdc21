//! Seeded random stream for the lottery.
//!
//! The generator is ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`), seeded
//! with `seed_from_u64(seed)`. Trial `t` of a Monte Carlo run uses the same
//! key on stream `t`, so trials are independent of each other and of the
//! order they are run in. Uniform draws below a bound use masked rejection
//! sampling on raw 64-bit words; no floating point is involved.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct LotteryRng {
    inner: ChaCha8Rng,
}

impl LotteryRng {
    pub fn new(seed: u64) -> Self {
        LotteryRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Stream `trial` under `seed`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(trial);
        LotteryRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mask = u64::MAX >> (bound - 1).leading_zeros().min(63);
        let mask = if bound == 1 { 0 } else { mask };
        loop {
            let x = self.next_u64() & mask;
            if x < bound {
                return x;
            }
        }
    }

    /// Uniform in `0..bound` for arbitrary-precision bounds.
    pub fn below_big(&mut self, bound: &BigUint) -> BigUint {
        assert!(bound.bits() > 0, "empty range");
        if let Ok(b) = u64::try_from(bound) {
            return BigUint::from(self.below(b));
        }
        let bits = bound.bits();
        let words = bits.div_ceil(64) as usize;
        let top_bits = bits - 64 * (words as u64 - 1);
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            if top_bits < 64 {
                digits[words - 1] &= (1u64 << top_bits) - 1;
            }
            let x =
                BigUint::from_slice(&digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>());
            if &x < bound {
                return x;
            }
        }
    }
}
