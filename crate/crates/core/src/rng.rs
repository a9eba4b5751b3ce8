//! Reproducible random streams.
//!
//! ChaCha8 is counter based: a `(seed, stream)` pair fixes the whole output,
//! so replicate `k` draws the same numbers regardless of how many replicates
//! run or in which order.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_d15c_0b0d_2019;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` under `seed`.
pub fn split(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(stream);
    rng
}
