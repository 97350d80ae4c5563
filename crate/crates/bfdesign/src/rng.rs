//! Small, portable, documented PRNG used by the Monte Carlo oracle:
//! SplitMix64 seeding into xoshiro256++.
//!
//! The stream contract matters more than speed here — results must be
//! reproducible bit-for-bit from a `(seed, chunk count)` pair, including
//! across reimplementations in other languages. The generators below follow
//! the reference algorithms of Blackman and Vigna exactly:
//!
//! * `SplitMix64`: `state += 0x9E3779B97F4A7C15`, then two xor-shift
//!   multiplies (constants 0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
//! * `Xoshiro256PlusPlus`: seeded with four consecutive SplitMix64 outputs;
//!   output is `rotl(s0 + s3, 23) + s0`.
//! * Uniform draws on (0, 1): the top 53 bits of a `u64`, offset by half a
//!   step — `(bits53 + 0.5) · 2⁻⁵³` — so 0 and 1 are never produced.

/// Weyl-sequence mixer; used to derive seeds and to seed xoshiro state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256++ generator.
#[derive(Debug, Clone)]
pub struct Xoshiro256PlusPlus {
    s: [u64; 4],
}

impl Xoshiro256PlusPlus {
    /// Seed the full 256-bit state from a single `u64` via SplitMix64, the
    /// seeding procedure recommended by the xoshiro authors.
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut mix = SplitMix64::new(seed);
        Self {
            s: [
                mix.next_u64(),
                mix.next_u64(),
                mix.next_u64(),
                mix.next_u64(),
            ],
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn uniform_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = Xoshiro256PlusPlus::seed_from_u64(42);
        let mut b = Xoshiro256PlusPlus::seed_from_u64(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = Xoshiro256PlusPlus::seed_from_u64(43);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn uniform_open01_stays_open() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        for _ in 0..10_000 {
            let u = rng.uniform_open01();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn matches_reference_xoshiro_stream() {
        // rand_xoshiro implements the same reference algorithm including
        // SplitMix64-based seed_from_u64; cross-check the raw stream.
        use rand_xoshiro::rand_core::{RngCore, SeedableRng};
        for seed in [0u64, 1, 42, 0xDEAD_BEEF, u64::MAX] {
            let mut ours = Xoshiro256PlusPlus::seed_from_u64(seed);
            let mut reference = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(seed);
            for i in 0..1000 {
                assert_eq!(
                    ours.next_u64(),
                    reference.next_u64(),
                    "stream divergence at seed {seed}, step {i}"
                );
            }
        }
    }
}
