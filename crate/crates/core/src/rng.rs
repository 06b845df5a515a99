//! Deterministic counter-based random streams.
//!
//! Every stream is keyed by `(seed, purpose tag, index)` through a
//! SplitMix64-style mixer, so draws made for different purposes (spacing
//! disorder, gauge disorder, entrywise perturbations, solver starts, ...)
//! never alias and any draw can be reproduced independently of execution
//! order. All arithmetic is pure 64-bit integer work plus one IEEE
//! multiply, so the output is bit-identical across platforms.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn fnv1a(tag: &str) -> u64 {
    let mut h = 0xCBF2_9CE4_8422_2325u64;
    for b in tag.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Derive a child seed from `(seed, tag, index)`, e.g. one seed per trial.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    mix(mix(mix(seed ^ GOLDEN) ^ fnv1a(tag)) ^ index)
}

/// A counter-based random stream: the i-th output is a pure function of
/// the key and i.
#[derive(Clone, Debug)]
pub struct StreamRng {
    key: u64,
    counter: u64,
}

impl StreamRng {
    pub fn new(seed: u64, tag: &str, index: u64) -> Self {
        StreamRng {
            key: derive_seed(seed, tag, index),
            counter: 0,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key ^ self.counter.wrapping_mul(GOLDEN))
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    #[inline]
    pub fn next_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_unit() * (hi - lo)
    }

    /// Uniform draw in `[-eps, eps)`.
    #[inline]
    pub fn next_symmetric(&mut self, eps: f64) -> f64 {
        self.next_uniform(-eps, eps)
    }
}
