//! Seeded randomness. Every random quantity in the crate is derived from an
//! explicit `u64` seed so reports can be reproduced bit for bit.

pub use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer; derives independent stream seeds from `(seed, index)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform random sign, `+1.0` or `-1.0`.
pub fn sign<R: Rng>(rng: &mut R) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// Uniform value in `[-1, 1)`.
pub fn symmetric_unit<R: Rng>(rng: &mut R) -> f64 {
    rng.random::<f64>() * 2.0 - 1.0
}
