//! Counter-based random streams.
//!
//! Every random decision in a run is keyed by a tuple of integers (master
//! seed, purpose tag, replicate, day, edge index, ...) and resolved through a
//! stateless mixing function. Results therefore never depend on evaluation
//! order or on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags separating the independent streams of one replicate.
pub mod tag {
    pub const NETWORK: u64 = 0x6e65_7477;
    pub const EPIDEMIC: u64 = 0x6570_6964;
    pub const SEEDING: u64 = 0x7365_6564;
    pub const SELECTION: u64 = 0x7365_6c65;
    pub const SAMPLE: u64 = 0x7361_6d70;
    pub const TRANSMIT: u64 = 0x7478_6d74;
    pub const LATENT: u64 = 0x6c61_7465;
    pub const INFECTIOUS: u64 = 0x696e_6663;
    pub const FATE: u64 = 0x6661_7465;
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a key path into a single 64-bit stream id.
#[inline]
pub fn derive(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix64(seed), |acc, &p| mix64(acc ^ mix64(p)))
}

#[inline]
pub fn derive2(seed: u64, a: u64, b: u64) -> u64 {
    mix64(mix64(mix64(seed) ^ mix64(a)) ^ mix64(b))
}

/// Uniform in [0, 1) with 53 bits of resolution.
#[inline]
pub fn unit(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bernoulli trial with success probability `p` on a hashed key.
#[inline]
pub fn coin(h: u64, p: f64) -> bool {
    unit(h) < p
}

/// Geometric duration on {1, 2, ...} where each day ends the stay with
/// probability `1 / mean`.
pub fn geometric_days(h: u64, mean: f64) -> u32 {
    let p = (1.0 / mean).clamp(0.0, 1.0);
    if p >= 1.0 {
        return 1;
    }
    if p <= 0.0 {
        return u32::MAX;
    }
    // 1 - unit is in (0, 1], so the log is finite.
    let u = 1.0 - unit(h);
    let extra = (u.ln() / (1.0 - p).ln()).floor();
    if extra >= (u32::MAX - 1) as f64 {
        u32::MAX
    } else {
        1 + extra as u32
    }
}

/// Sequential generator for places that consume a variable number of draws.
pub fn stream(seed: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, path))
}
