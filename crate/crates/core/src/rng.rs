//! Seedable random streams. Each consumer gets its own ChaCha stream so that
//! adding draws in one place never perturbs another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Generator = 1,
    Trace = 2,
    Fuzz = 3,
    Bench = 4,
    Test = 5,
}

pub fn seeded_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
