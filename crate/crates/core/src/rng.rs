//! Seeded, splittable random streams.
//!
//! Every stochastic routine derives its generators from a `(seed, stream)`
//! pair, so results depend only on the seed and the work decomposition,
//! never on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for sub-stream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
