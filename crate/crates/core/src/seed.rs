//! Counter-based seed derivation.
//!
//! Every random stream in a run is keyed by `(master, domain, a, b)` rather
//! than drawn sequentially from one generator, so work items can execute in
//! any order (or concurrently) and still see the same randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer. A bijection on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

pub fn derive_seed(master: u64, domain: u64, a: u64, b: u64) -> u64 {
    let mut h = mix64(master ^ GOLDEN);
    for word in [domain, a, b] {
        h = mix64(h.wrapping_add(GOLDEN) ^ word);
    }
    h
}

pub fn derive_rng(master: u64, domain: u64, a: u64, b: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, domain, a, b))
}
