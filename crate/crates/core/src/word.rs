//! Letters, finite words and Parikh vectors.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::MAX_ALPHABET;

/// A letter of the alphabet `{0, ..., d-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u8);

impl Letter {
    pub fn new(value: usize, d: usize) -> Result<Self> {
        check_alphabet(d)?;
        if value >= d {
            return Err(Error::LetterOutOfRange { letter: value, d });
        }
        Ok(Letter(value as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_alphabet(d: usize) -> Result<()> {
    if d == 0 || d > MAX_ALPHABET {
        return Err(Error::AlphabetSize(d));
    }
    Ok(())
}

/// A finite word over `{0, ..., d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    d: usize,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(d: usize, symbols: Vec<u8>) -> Result<Self> {
        check_alphabet(d)?;
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= d) {
            return Err(Error::LetterOutOfRange { letter: bad as usize, d });
        }
        Ok(Word { d, symbols })
    }

    /// Caller guarantees every symbol is below `d`.
    pub(crate) fn from_trusted(d: usize, symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < d));
        Word { d, symbols }
    }

    pub fn empty(d: usize) -> Result<Self> {
        Word::new(d, Vec::new())
    }

    pub fn from_slice(d: usize, symbols: &[u8]) -> Result<Self> {
        Word::new(d, symbols.to_vec())
    }

    /// Parses a word written as decimal digits (`"0102"`), `d <= 10` only.
    pub fn from_digits(d: usize, digits: &str) -> Result<Self> {
        let symbols = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|v| v as u8)
                    .ok_or_else(|| Error::Parse(format!("'{c}' is not a decimal digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(d, symbols)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn letter(&self, i: usize) -> Option<Letter> {
        self.symbols.get(i).map(|&s| Letter(s))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: other.d });
        }
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Word { d: self.d, symbols })
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if letter.index() >= self.d {
            return Err(Error::LetterOutOfRange { letter: letter.index(), d: self.d });
        }
        self.symbols.push(letter.0);
        Ok(())
    }

    pub fn reversed(&self) -> Word {
        Word { d: self.d, symbols: self.symbols.iter().rev().copied().collect() }
    }

    pub fn is_palindrome(&self) -> bool {
        self.symbols.iter().eq(self.symbols.iter().rev())
    }

    pub fn is_prefix_of(&self, other: &[u8]) -> bool {
        other.starts_with(&self.symbols)
    }

    pub fn parikh(&self) -> ParikhVector {
        ParikhVector::of(self.d, &self.symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_symbols(self.d, &self.symbols))
    }
}

/// Digits for `d <= 10`, otherwise a comma-separated list.
pub fn format_symbols(d: usize, symbols: &[u8]) -> String {
    if d <= 10 {
        symbols.iter().map(|&s| char::from(b'0' + s)).collect()
    } else {
        symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Relabels letters by order of first appearance: the first distinct letter
/// becomes 0, the next new one 1, and so on. Two words are equal up to a
/// permutation of letters iff their canonical forms coincide.
pub fn canonical_relabel(symbols: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    symbols
        .iter()
        .map(|&s| {
            if map[s as usize] == u8::MAX {
                map[s as usize] = next;
                next += 1;
            }
            map[s as usize]
        })
        .collect()
}

/// Vector of letter counts `(|w|_0, ..., |w|_{d-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParikhVector(pub Vec<BigUint>);

impl ParikhVector {
    pub fn zero(d: usize) -> Self {
        ParikhVector(vec![BigUint::zero(); d])
    }

    pub fn of(d: usize, symbols: &[u8]) -> Self {
        let mut counts = vec![0u64; d];
        for &s in symbols {
            counts[s as usize] += 1;
        }
        ParikhVector(counts.into_iter().map(BigUint::from).collect())
    }

    pub fn unit(d: usize, a: usize) -> Self {
        let mut v = ParikhVector::zero(d);
        v.0[a] = BigUint::from(1u8);
        v
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// `(1, ..., 1) . V`, the length of any word with this Parikh vector.
    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ParikhVector) -> Result<ParikhVector> {
        if self.d() != other.d() {
            return Err(Error::AlphabetMismatch { left: self.d(), right: other.d() });
        }
        Ok(ParikhVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }
}
