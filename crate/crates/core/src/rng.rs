//! Seeding rules shared by every stochastic operation.
//!
//! All randomness comes from [`ChaCha8Rng`], seeded through
//! `SeedableRng::seed_from_u64`. Both the stream cipher and the `u64` seed
//! expansion are fixed by `rand_chacha` 0.3 and produce identical streams on
//! every platform.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as SchedRng;

pub fn seeded(seed: u64) -> SchedRng {
    SchedRng::seed_from_u64(seed)
}

/// Derives an independent sub-seed from a base seed and a list of
/// coordinates (SplitMix64 finalizer folded over the parts).
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix(base), |acc, &p| mix(acc ^ mix(p.wrapping_add(0x9E37_79B9_7F4A_7C15))))
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
