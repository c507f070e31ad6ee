//! Plain-text sequence files: one word per file, one character per symbol,
//! symbols drawn from a declared alphabet string. Whitespace is ignored.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use lcsim::{Error, Sequence};

pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn parse(spec: &str) -> Result<Self> {
        let chars: Vec<char> = spec.chars().collect();
        for (i, c) in chars.iter().enumerate() {
            if chars[..i].contains(c) {
                return Err(Error::InvalidInput(format!("alphabet repeats '{c}'")).into());
            }
        }
        if chars.len() < 2 {
            return Err(Error::InvalidInput("alphabet needs at least two characters".into()).into());
        }
        if chars.len() > lcsim::sequence::MAX_ALPHABET {
            return Err(Error::InvalidInput("alphabet has more than 256 characters".into()).into());
        }
        Ok(Alphabet { chars })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn decode(&self, text: &str) -> Result<Sequence> {
        let mut symbols = Vec::with_capacity(text.len());
        for (line_no, line) in text.lines().enumerate() {
            for c in line.chars().filter(|c| !c.is_whitespace()) {
                let idx = self.chars.iter().position(|&a| a == c).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "line {}: character '{c}' is not in the alphabet",
                        line_no + 1
                    ))
                })?;
                symbols.push(idx as u8);
            }
        }
        Ok(Sequence::new(symbols, self.len())?)
    }

    pub fn encode(&self, seq: &Sequence) -> String {
        seq.symbols().iter().map(|&s| self.chars[s as usize]).collect()
    }

    pub fn read_file(&self, path: &Path) -> Result<Sequence> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.decode(&text)
            .with_context(|| format!("parsing {}", path.display()))
    }
}
