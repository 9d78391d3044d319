//! Finite binary words and Bernoulli sequence prefixes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_bits(bits: &[u8]) -> Result<()> {
    match bits.iter().find(|&&b| b > 1) {
        Some(&b) => Err(Error::InvalidLetter(b)),
        None => Ok(()),
    }
}

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::InvalidBitChar(other)),
        })
        .collect()
}

fn bits_from_index(index: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((index >> (len - 1 - i)) & 1) as u8).collect()
}

fn write_bits(f: &mut fmt::Formatter<'_>, bits: &[u8]) -> fmt::Result {
    for &b in bits {
        f.write_str(if b == 1 { "1" } else { "0" })?;
    }
    Ok(())
}

/// Named word families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordKind {
    Constant { letter: u8 },
    Alternating { first: u8 },
    /// `p` ones followed by `q` zeros.
    TwoBlock { p: usize, q: usize },
    Explicit(Vec<u8>),
}

/// A finite word `w_1..w_n` over `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinaryWord {
    letters: Vec<u8>,
}

impl BinaryWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        check_bits(&letters)?;
        Ok(BinaryWord { letters })
    }

    pub fn empty() -> Self {
        BinaryWord::default()
    }

    pub fn constant(letter: u8, n: usize) -> Result<Self> {
        check_bits(&[letter])?;
        Ok(BinaryWord { letters: vec![letter; n] })
    }

    /// `(first, 1-first, first, ...)`; `alternating(1, n)` is `A_n`.
    pub fn alternating(first: u8, n: usize) -> Result<Self> {
        check_bits(&[first])?;
        Ok(BinaryWord { letters: (0..n).map(|i| first ^ (i % 2) as u8).collect() })
    }

    pub fn two_block(p: usize, q: usize) -> Self {
        let mut letters = vec![1; p];
        letters.extend(std::iter::repeat_n(0, q));
        BinaryWord { letters }
    }

    /// Builds a word of the given family and length.
    pub fn make(kind: &WordKind, n: usize) -> Result<Self> {
        match kind {
            WordKind::Constant { letter } => Self::constant(*letter, n),
            WordKind::Alternating { first } => Self::alternating(*first, n),
            WordKind::TwoBlock { p, q } => {
                if p + q != n {
                    return Err(Error::BlockLengthMismatch { p: *p, q: *q, n });
                }
                Ok(Self::two_block(*p, *q))
            }
            WordKind::Explicit(bits) => {
                if bits.len() != n {
                    return Err(Error::InvalidArgument(format!(
                        "explicit word has length {}, expected {n}",
                        bits.len()
                    )));
                }
                Self::new(bits.clone())
            }
        }
    }

    /// The word whose letters are the binary digits of `index`, most
    /// significant first. Indices `0..2^n` enumerate words in lexicographic order.
    pub fn from_index(index: u64, n: usize) -> Self {
        BinaryWord { letters: bits_from_index(index, n) }
    }

    pub fn all(n: usize) -> impl Iterator<Item = BinaryWord> {
        (0..1u64 << n).map(move |i| BinaryWord::from_index(i, n))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// `w_k`, 1-based.
    pub fn letter(&self, k: usize) -> u8 {
        self.letters[k - 1]
    }

    pub fn complement(&self) -> Self {
        BinaryWord { letters: self.letters.iter().map(|b| b ^ 1).collect() }
    }

    pub fn prefix(&self, k: usize) -> Self {
        BinaryWord { letters: self.letters[..k].to_vec() }
    }

    /// The last `m` letters.
    pub fn suffix(&self, m: usize) -> Self {
        BinaryWord { letters: self.letters[self.len() - m..].to_vec() }
    }

    pub fn is_constant(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_alternating(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.letters)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(BinaryWord { letters: parse_bits(s.trim())? })
    }
}

/// A finite prefix `Y_1..Y_L` of a Bernoulli sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SequencePrefix {
    bits: Vec<u8>,
}

impl SequencePrefix {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        check_bits(&bits)?;
        Ok(SequencePrefix { bits })
    }

    pub fn from_index(index: u64, len: usize) -> Self {
        SequencePrefix { bits: bits_from_index(index, len) }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `Y_m`, 1-based.
    pub fn bit(&self, m: usize) -> u8 {
        self.bits[m - 1]
    }

    pub fn extended(&self, tail: &[u8]) -> Result<Self> {
        check_bits(tail)?;
        let mut bits = self.bits.clone();
        bits.extend_from_slice(tail);
        Ok(SequencePrefix { bits })
    }

    pub fn truncated(&self, len: usize) -> Self {
        SequencePrefix { bits: self.bits[..len.min(self.bits.len())].to_vec() }
    }

    /// Reads the prefix as a word (used when a sequence plays the role of `X`).
    pub fn as_word(&self) -> BinaryWord {
        BinaryWord { letters: self.bits.clone() }
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl From<BinaryWord> for SequencePrefix {
    fn from(word: BinaryWord) -> Self {
        SequencePrefix { bits: word.letters }
    }
}

impl fmt::Display for SequencePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.bits)
    }
}

impl FromStr for SequencePrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(SequencePrefix { bits: parse_bits(s.trim())? })
    }
}
