//! Exact longest-common-subsequence engines.
//!
//! Three interchangeable two-sequence engines compute the same number:
//!
//! * [`lcs_dp`]: the quadratic dynamic program, kept as the reference oracle.
//! * [`lcs_wmmm`]: the O(NP) furthest-reaching-point algorithm of Wu, Manber,
//!   Myers and Miller. Fast when the inputs are similar.
//! * [`lcs_bitparallel`]: a word-parallel row update, O(|a|·|b|/64) on any input.
//!   This is the throughput engine for random words, where the number of
//!   deletions grows linearly with the length.
//!
//! [`lcs_multi`] handles m ≥ 2 sequences with an m-dimensional table, and
//! [`lcs_backtrack`] recovers an optimal witness for two sequences.

mod bitpar;
mod dp;
mod multi;
mod onp;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bitpar::lcs_bitparallel;
pub use dp::{lcs_backtrack, lcs_dp, BACKTRACK_MAX_LEN};
pub use multi::{lcs_multi, lcs_multi_with_budget, DEFAULT_CELL_BUDGET};
pub use onp::lcs_wmmm;

use crate::error::{Error, Result};
use crate::sequence::Sequence;

pub(crate) fn check_same_alphabet(a: &Sequence, b: &Sequence) -> Result<()> {
    if a.alphabet_size() != b.alphabet_size() {
        return Err(Error::invalid(format!(
            "alphabet sizes differ: {} vs {}",
            a.alphabet_size(),
            b.alphabet_size()
        )));
    }
    Ok(())
}

/// Selects which two-sequence engine computes LCS lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Dp,
    Wmmm,
    #[default]
    BitParallel,
}

impl Engine {
    pub fn lcs(self, a: &Sequence, b: &Sequence) -> Result<usize> {
        match self {
            Engine::Dp => lcs_dp(a, b),
            Engine::Wmmm => lcs_wmmm(a, b),
            Engine::BitParallel => lcs_bitparallel(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Dp => "dp",
            Engine::Wmmm => "wmmm",
            Engine::BitParallel => "bitparallel",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dp" => Ok(Engine::Dp),
            "wmmm" | "onp" => Ok(Engine::Wmmm),
            "bitparallel" | "bit-parallel" | "bp" => Ok(Engine::BitParallel),
            other => Err(Error::invalid(format!("unknown LCS engine '{other}'"))),
        }
    }
}
