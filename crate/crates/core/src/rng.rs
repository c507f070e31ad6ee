//! Seeded random streams.
//!
//! Every random draw in the crate comes from ChaCha8 keyed by a 64-bit
//! master seed, with the 64-bit ChaCha stream selector set to the replicate
//! index. ChaCha is counter based, so stream `r` of seed `s` is the same
//! byte sequence on every host and under every thread schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Name recorded in run metadata for the generator behind [`RngHandle`].
pub const GENERATOR_NAME: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64(master), stream = replicate index";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngHandle {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngHandle {
    pub fn new(master_seed: u64) -> Self {
        RngHandle { master_seed, stream_id: 0 }
    }

    /// Same master seed, different stream.
    pub fn stream(self, stream_id: u64) -> Self {
        RngHandle { stream_id, ..self }
    }

    /// An independent master seed for a labelled sub-experiment, such as one
    /// point of a length grid. Stream ids restart at zero.
    pub fn derive(self, label: u64) -> Self {
        let mixed = splitmix64(self.master_seed ^ splitmix64(label.wrapping_add(0x6a09_e667_f3bc_c909)));
        RngHandle::new(mixed)
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
