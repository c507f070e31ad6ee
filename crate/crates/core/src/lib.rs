//! Longest common subsequences of random words: exact engines, Monte-Carlo
//! statistics, a Z-test for sequence similarity, and counting upper bounds
//! on the Chvátal–Sankoff constants of several words.

pub mod bounds;
pub mod error;
pub mod hypothesis;
pub mod lcs;
pub mod montecarlo;
pub mod rng;
pub mod seqgen;
pub mod sequence;

pub use error::{Error, Result};
pub use lcs::{lcs_backtrack, lcs_bitparallel, lcs_dp, lcs_multi, lcs_wmmm, Engine};
pub use rng::RngHandle;
pub use sequence::Sequence;
