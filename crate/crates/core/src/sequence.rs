use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 256;

/// A word over the alphabet `{0, 1, .., k-1}`.
///
/// Symbols are stored as bytes, which caps the alphabet at 256 letters.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    symbols: Vec<u8>,
    alphabet_size: usize,
}

impl Sequence {
    pub fn new(symbols: Vec<u8>, alphabet_size: usize) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        if let Some(pos) = symbols.iter().position(|&s| s as usize >= alphabet_size) {
            return Err(Error::invalid(format!(
                "symbol {} at position {pos} is outside alphabet of size {alphabet_size}",
                symbols[pos]
            )));
        }
        Ok(Sequence { symbols, alphabet_size })
    }

    pub fn empty(alphabet_size: usize) -> Result<Self> {
        Self::new(Vec::new(), alphabet_size)
    }

    /// Parses a string of decimal digits, e.g. `"0110"`, as symbols.
    pub fn from_digits(text: &str, alphabet_size: usize) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::invalid(format!("'{c}' is not a decimal digit")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(symbols, alphabet_size)
    }

    /// Caller guarantees every symbol is below `alphabet_size`.
    pub(crate) fn from_raw(symbols: Vec<u8>, alphabet_size: usize) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < alphabet_size));
        Sequence { symbols, alphabet_size }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Greedy check that `self` can be obtained from `other` by deletions.
    pub fn is_subsequence_of(&self, other: &Sequence) -> bool {
        is_subsequence(&self.symbols, &other.symbols)
    }

    /// Applies a permutation of the alphabet to every symbol.
    pub fn relabel(&self, perm: &[u8]) -> Result<Sequence> {
        if perm.len() != self.alphabet_size {
            return Err(Error::invalid("permutation length must equal alphabet size"));
        }
        let mut seen = vec![false; self.alphabet_size];
        for &p in perm {
            let p = p as usize;
            if p >= self.alphabet_size || seen[p] {
                return Err(Error::invalid("relabeling is not a permutation"));
            }
            seen[p] = true;
        }
        let symbols = self.symbols.iter().map(|&s| perm[s as usize]).collect();
        Ok(Sequence::from_raw(symbols, self.alphabet_size))
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence(k={}, ", self.alphabet_size)?;
        if self.symbols.len() <= 64 {
            for s in &self.symbols {
                if self.alphabet_size <= 10 {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "{s},")?;
                }
            }
        } else {
            write!(f, "len={}", self.symbols.len())?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_alphabet(alphabet_size: usize) -> Result<()> {
    if !(2..=MAX_ALPHABET).contains(&alphabet_size) {
        return Err(Error::invalid(format!(
            "alphabet size must be in 2..={MAX_ALPHABET}, got {alphabet_size}"
        )));
    }
    Ok(())
}

pub(crate) fn is_subsequence(needle: &[u8], haystack: &[u8]) -> bool {
    let mut it = haystack.iter();
    needle.iter().all(|s| it.any(|h| h == s))
}
