//! Pinned splitmix64 stream.
//!
//! The exact bit recipe matters: policies and noise buffers must be identical
//! across platforms and across language ports, so nothing here may change
//! without regenerating every golden value.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Deterministic 64-bit random stream (splitmix64).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSource {
    state: u64,
}

impl RandomSource {
    pub const fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        finalize(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_float(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, n)` by the high half of a 128-bit product.
    ///
    /// `n == 0` still consumes a draw and returns 0.
    pub fn next_below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Child stream seeded with `splitmix64(next_u64())`; consumes one draw.
    pub fn fork(&mut self) -> RandomSource {
        RandomSource::new(splitmix64(self.next_u64()))
    }
}

fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// First output of a splitmix64 generator seeded with `x`.
pub fn splitmix64(x: u64) -> u64 {
    finalize(x.wrapping_add(GOLDEN_GAMMA))
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
