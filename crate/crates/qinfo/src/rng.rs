//! Seeded, stream-splittable random number generation.
//!
//! Every stochastic operation in this crate takes a 64-bit master seed and
//! derives independent ChaCha streams from `(seed, stream index)`, so repeated
//! trials can run in any order (or in parallel) without correlation and a
//! fixed seed reproduces results bit for bit.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Generator for stream `stream` of master seed `seed`.
pub fn seeded_stream(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
