//! Named, reproducible RNG sub-streams derived from one master seed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Purpose of a random stream. Each purpose draws from its own ChaCha
/// stream so that changing one never perturbs another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stream {
    Covariates,
    Beta,
    Noise,
    TestCovariates,
    Select,
    Split,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Covariates => 1,
            Stream::Beta => 2,
            Stream::Noise => 3,
            Stream::TestCovariates => 4,
            Stream::Select => 5,
            Stream::Split => 6,
        }
    }
}

/// Name of the generator recorded in run metadata.
pub const GENERATOR: &str = "ChaCha8";

/// Seed for `stream` of replicate `replicate` under `master`.
pub fn derive_seed(master: u64, stream: Stream, replicate: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(replicate.wrapping_mul(16).wrapping_add(stream.tag()));
    rng.next_u64()
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
