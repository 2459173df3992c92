//! Eventually periodic directive sequences `(i_n)` of elementary morphisms.
//!
//! Text form is `pre:period`. For alphabets of at most ten letters each part
//! is a string of digits (`:012`, `0:01`); larger alphabets use bracketed
//! comma-separated lists (`[]:[0,1,11]`). The preperiod may be empty, the
//! period may not.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::word::{check_alphabet, format_symbols, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectiveSequence {
    d: usize,
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

impl DirectiveSequence {
    pub fn new(d: usize, preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        check_alphabet(d)?;
        if period.is_empty() {
            return Err(Error::InvalidDirective("period must be nonempty".into()));
        }
        if let Some(&bad) = preperiod.iter().chain(&period).find(|&&s| s as usize >= d) {
            return Err(Error::LetterOutOfRange { letter: bad as usize, d });
        }
        Ok(DirectiveSequence { d, preperiod, period })
    }

    /// The directive `(0 1 ... d-1)^ω` of the d-bonacci word.
    pub fn dbonacci(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("d-bonacci directive needs d >= 2, got {d}")));
        }
        DirectiveSequence::new(d, Vec::new(), (0..d as u8).collect())
    }

    /// Parses `pre:period`; when `d` is `None` it is inferred as the largest letter plus one.
    pub fn parse(text: &str, d: Option<usize>) -> Result<Self> {
        let (pre, per) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `pre:period`, got `{text}`")))?;
        let preperiod = parse_part(pre)?;
        let period = parse_part(per)?;
        if period.is_empty() {
            return Err(Error::InvalidDirective("period must be nonempty".into()));
        }
        let inferred = preperiod.iter().chain(&period).map(|&s| s as usize + 1).max().unwrap_or(1);
        let d = match d {
            Some(d) if d < inferred => {
                return Err(Error::LetterOutOfRange { letter: inferred - 1, d });
            }
            Some(d) => d,
            None => inferred,
        };
        DirectiveSequence::new(d, preperiod, period)
    }

    /// Random directive in which every letter occurs in the period.
    pub fn random_valid<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Self> {
        check_alphabet(d)?;
        let pre_len = rng.gen_range(0..=4);
        let preperiod = (0..pre_len).map(|_| rng.gen_range(0..d) as u8).collect();
        let mut period: Vec<u8> = (0..d as u8).collect();
        for _ in 0..rng.gen_range(0..=4) {
            period.push(rng.gen_range(0..d) as u8);
        }
        period.shuffle(rng);
        DirectiveSequence::new(d, preperiod, period)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// `i_n`.
    pub fn letter(&self, n: usize) -> Letter {
        Letter(self.symbol(n))
    }

    pub(crate) fn symbol(&self, n: usize) -> u8 {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Every letter occurs in the period, hence infinitely often, and `d >= 2`.
    pub fn is_valid_ar(&self) -> bool {
        self.d >= 2 && self.missing_letters().is_empty()
    }

    pub fn missing_letters(&self) -> Vec<usize> {
        (0..self.d).filter(|&a| !self.period.contains(&(a as u8))).collect()
    }

    pub fn require_valid_ar(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidDirective(format!(
                "an Arnoux-Rauzy directive needs at least two letters, got d = {}",
                self.d
            )));
        }
        let missing = self.missing_letters();
        if !missing.is_empty() {
            let list: Vec<String> = missing.iter().map(|a| a.to_string()).collect();
            return Err(Error::InvalidDirective(format!(
                "letter(s) {} missing from the period of `{self}`",
                list.join(", ")
            )));
        }
        Ok(())
    }

    /// The directive `(i_{n+k})_n`.
    pub fn shifted(&self, k: usize) -> DirectiveSequence {
        if k <= self.preperiod.len() {
            return DirectiveSequence {
                d: self.d,
                preperiod: self.preperiod[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let r = (k - self.preperiod.len()) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        DirectiveSequence { d: self.d, preperiod: Vec::new(), period }
    }

    /// The first `len` terms.
    pub fn take(&self, len: usize) -> Vec<u8> {
        (0..len).map(|n| self.symbol(n)).collect()
    }
}

fn parse_part(part: &str) -> Result<Vec<u8>> {
    let part = part.trim();
    if let Some(inner) = part.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated list `{part}`")))?;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        return inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad letter `{tok}`")))
            })
            .collect();
    }
    part.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|v| v as u8)
                .ok_or_else(|| Error::Parse(format!("bad letter `{c}` in `{part}`")))
        })
        .collect()
}

impl fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d <= 10 {
            write!(
                f,
                "{}:{}",
                format_symbols(self.d, &self.preperiod),
                format_symbols(self.d, &self.period)
            )
        } else {
            write!(
                f,
                "[{}]:[{}]",
                format_symbols(self.d, &self.preperiod),
                format_symbols(self.d, &self.period)
            )
        }
    }
}

impl FromStr for DirectiveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DirectiveSequence::parse(s, None)
    }
}
