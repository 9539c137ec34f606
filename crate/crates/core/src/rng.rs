//! Deterministic SplitMix64 generator.
//!
//! The draw order is frozen so that seeds reproduce the same keys and
//! permutations on every platform and in every language binding.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// High word first.
    pub fn next_u128(&mut self) -> u128 {
        let hi = self.next_u64() as u128;
        let lo = self.next_u64() as u128;
        (hi << 64) | lo
    }

    /// Uniform value in `[0, bound)`; rejects draws below `2^64 mod bound`.
    ///
    /// Panics if `bound == 0`.
    pub fn uniform_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "uniform_below(0)");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// 128-bit counterpart of [`uniform_below`](Self::uniform_below).
    pub fn uniform_below_u128(&mut self, bound: u128) -> u128 {
        assert!(bound > 0, "uniform_below_u128(0)");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u128();
            if x >= threshold {
                return x % bound;
            }
        }
    }
}
