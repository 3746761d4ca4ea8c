//! Deterministic seeding.
//!
//! Every stochastic operation takes an explicit [`Seed`]. Generators are
//! ChaCha8 streams, whose output is fixed across platforms and crate
//! versions, so the same seed always reproduces the same data and folds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Name of the generator backing every [`Seed`]; echoed into reports.
pub const GENERATOR: &str = "chacha8/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn new(value: u64) -> Self {
        Seed(value)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent stream `stream` of this seed. Used to give restarts,
    /// folds and sub-steps their own generators without sharing state.
    pub fn stream(self, stream: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(stream);
        rng
    }

    /// Derive a child seed, e.g. one per repetition of an experiment.
    pub fn child(self, index: u64) -> Seed {
        use rand::RngCore;
        Seed(self.stream(index.wrapping_add(1)).next_u64())
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

impl std::fmt::Display for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
