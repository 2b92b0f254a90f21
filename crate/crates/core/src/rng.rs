//! Counter-based random numbers.
//!
//! Every draw is a pure function of the seed, a stream tag and up to three
//! coordinates, so values can be produced in any order and on any thread.
//! The mixing function is the SplitMix64 finalizer, chained over the key
//! words. Not cryptographically secure.

use std::f64::consts::TAU;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: mix(seed.wrapping_add(GOLDEN)),
        }
    }

    /// 64 random bits at coordinate `(stream, a, b, c)`.
    pub fn bits(&self, stream: u64, a: u64, b: u64, c: u64) -> u64 {
        let mut h = self.key;
        for word in [stream, a, b, c] {
            h = mix(h ^ word.wrapping_add(GOLDEN).wrapping_mul(GOLDEN));
        }
        h
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&self, stream: u64, a: u64, b: u64, c: u64) -> f64 {
        ((self.bits(stream, a, b, c) >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller over two independent coordinates.
    pub fn normal(&self, stream: u64, a: u64, b: u64) -> f64 {
        let u1 = self.uniform(stream, a, b, 0);
        let u2 = self.uniform(stream, a, b, 1);
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    }
}
