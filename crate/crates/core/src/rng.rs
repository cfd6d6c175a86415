//! Seeded random streams.
//!
//! Every randomized component draws from `ChaCha8Rng::seed_from_u64(seed)`
//! with a component-specific stream selected by `set_stream`. Sub-streams
//! (one per retry, trial or grid point) put their index in the low 32 bits.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const GENERATOR: u64 = 1 << 32;
pub const AUDIT: u64 = 2 << 32;
pub const SPECTRAL: u64 = 3 << 32;
pub const TEMPLATE: u64 = 4 << 32;
pub const FAMILY: u64 = 5 << 32;
pub const PIPELINE: u64 = 6 << 32;
pub const FLEXIBILITY: u64 = 7 << 32;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
