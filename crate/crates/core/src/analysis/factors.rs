use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::generate::ArPrefix;
use crate::word::Word;

use super::stabilize;

/// One factor, stored as a view `(offset, n)` into the analyzed buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub offset: usize,
    pub occurrences: Vec<usize>,
}

/// All length-`n` factors of a buffer, sorted lexicographically, with their
/// ascending occurrence lists.
#[derive(Debug, Clone)]
pub struct FactorSet<'a> {
    buffer: &'a [u8],
    d: usize,
    n: usize,
    factors: Vec<Factor>,
}

impl<'a> FactorSet<'a> {
    pub fn build(buffer: &'a [u8], d: usize, n: usize) -> Result<Self> {
        if n > buffer.len() {
            return Err(Error::Domain(format!(
                "factor length {n} exceeds prefix length {}",
                buffer.len()
            )));
        }
        if n == 0 {
            let factor = Factor { offset: 0, occurrences: (0..=buffer.len()).collect() };
            return Ok(FactorSet { buffer, d, n, factors: vec![factor] });
        }
        let mut index: HashMap<&[u8], usize> = HashMap::new();
        let mut factors: Vec<Factor> = Vec::new();
        for (p, window) in buffer.windows(n).enumerate() {
            let id = *index.entry(window).or_insert_with(|| {
                factors.push(Factor { offset: p, occurrences: Vec::new() });
                factors.len() - 1
            });
            factors[id].occurrences.push(p);
        }
        factors.sort_by(|a, b| buffer[a.offset..a.offset + n].cmp(&buffer[b.offset..b.offset + n]));
        Ok(FactorSet { buffer, d, n, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn slice(&self, factor: &Factor) -> &'a [u8] {
        &self.buffer[factor.offset..factor.offset + self.n]
    }

    pub fn word(&self, factor: &Factor) -> Word {
        Word::from_trusted(self.d, self.slice(factor).to_vec())
    }

    pub fn words(&self) -> Vec<Word> {
        self.factors.iter().map(|f| self.word(f)).collect()
    }

    pub fn get(&self, w: &[u8]) -> Option<&Factor> {
        if w.len() != self.n {
            return None;
        }
        self.factors
            .binary_search_by(|f| self.slice(f).cmp(w))
            .ok()
            .map(|i| &self.factors[i])
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.get(w).is_some()
    }

    /// Distinct gaps `u_i ⋯ u_{j-1}` between consecutive occurrences, in order
    /// of first appearance.
    pub fn return_words(&self, factor: &Factor) -> Vec<Word> {
        let mut seen: Vec<&[u8]> = Vec::new();
        for pair in factor.occurrences.windows(2) {
            let r = &self.buffer[pair[0]..pair[1]];
            if !seen.contains(&r) {
                seen.push(r);
            }
        }
        seen.into_iter().map(|r| Word::from_trusted(self.d, r.to_vec())).collect()
    }
}

/// `L_u(n)` as observed in the prefix.
pub fn factor_set(prefix: &ArPrefix, n: usize) -> Result<FactorSet<'_>> {
    FactorSet::build(prefix.symbols(), prefix.d(), n)
}

/// `C_u(n)` as observed in the prefix.
pub fn factor_complexity(prefix: &ArPrefix, n: usize) -> Result<usize> {
    Ok(factor_set(prefix, n)?.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFactors {
    pub n: usize,
    pub left: Vec<Word>,
    pub right: Vec<Word>,
}

impl SpecialFactors {
    pub fn bispecial(&self) -> Vec<Word> {
        self.left.iter().filter(|w| self.right.contains(w)).cloned().collect()
    }
}

/// Left and right special factors of length `n` observed in `buffer`.
pub fn special_factors_in(buffer: &[u8], d: usize, n: usize) -> Result<SpecialFactors> {
    if n >= buffer.len() {
        return Err(Error::Domain(format!(
            "special factors of length {n} need a prefix longer than {}",
            buffer.len()
        )));
    }
    // Bit masks of extending letters; d <= 64.
    let mut ext: HashMap<&[u8], (u64, u64)> = HashMap::new();
    for p in 0..=buffer.len() - n {
        let w = &buffer[p..p + n];
        let entry = ext.entry(w).or_insert((0, 0));
        if p > 0 {
            entry.0 |= 1 << buffer[p - 1];
        }
        if p + n < buffer.len() {
            entry.1 |= 1 << buffer[p + n];
        }
    }
    let mut left: Vec<Word> = Vec::new();
    let mut right: Vec<Word> = Vec::new();
    for (w, (l, r)) in ext {
        if l.count_ones() >= 2 {
            left.push(Word::from_trusted(d, w.to_vec()));
        }
        if r.count_ones() >= 2 {
            right.push(Word::from_trusted(d, w.to_vec()));
        }
    }
    left.sort();
    right.sort();
    Ok(SpecialFactors { n, left, right })
}

/// Special factors of length `n`, growing the prefix until they stabilize.
pub fn special_factors(prefix: &ArPrefix, n: usize) -> Result<SpecialFactors> {
    let stable = stabilize(prefix, n + 2, "special factors", |p| {
        special_factors_in(p.symbols(), p.d(), n)
    })?;
    Ok(stable.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directive::DirectiveSequence;

    fn prefix(dir: &str, len: usize) -> ArPrefix {
        ArPrefix::generate(&DirectiveSequence::parse(dir, None).unwrap(), len).unwrap()
    }

    #[test]
    fn fibonacci_length_two_factors() {
        let p = prefix(":01", 5);
        assert_eq!(p.word().to_string(), "01001");
        let fs = factor_set(&p, 2).unwrap();
        let got: Vec<(String, Vec<usize>)> = fs
            .factors()
            .iter()
            .map(|f| (fs.word(f).to_string(), f.occurrences.clone()))
            .collect();
        assert_eq!(
            got,
            vec![("00".into(), vec![2]), ("01".into(), vec![0, 3]), ("10".into(), vec![1])]
        );
        assert!(fs.contains(&[1, 0]));
        assert!(!fs.contains(&[1, 1]));
    }

    #[test]
    fn empty_factor_occurs_everywhere() {
        let p = prefix(":01", 13);
        let fs = factor_set(&p, 0).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs.factors()[0].occurrences, (0..=13).collect::<Vec<_>>());
        assert_eq!(factor_complexity(&p, 0).unwrap(), 1);
    }

    #[test]
    fn complexity_values() {
        let trib = prefix(":012", 10_000);
        assert_eq!(factor_complexity(&trib, 5).unwrap(), 11);
        assert_eq!(factor_complexity(&trib, 7).unwrap(), 15);
        let fib = prefix(":01", 10_000);
        assert_eq!(factor_complexity(&fib, 7).unwrap(), 8);
        assert!(factor_complexity(&prefix(":01", 3), 4).is_err());
    }

    #[test]
    fn special_factor_examples() {
        let fib = prefix(":01", 13);
        let sp = special_factors(&fib, 1).unwrap();
        assert_eq!(sp.left, vec![Word::from_digits(2, "0").unwrap()]);
        assert_eq!(sp.right, vec![Word::from_digits(2, "0").unwrap()]);

        let trib = prefix(":012", 64);
        let sp = special_factors(&trib, 2).unwrap();
        assert_eq!((sp.left.len(), sp.right.len()), (1, 1));

        let sp = special_factors(&trib, 0).unwrap();
        assert_eq!(sp.left, vec![Word::empty(3).unwrap()]);
        assert_eq!(sp.right, vec![Word::empty(3).unwrap()]);
    }

    #[test]
    fn return_words_from_occurrence_lists() {
        let fib = prefix(":01", 13);
        let fs = factor_set(&fib, 1).unwrap();
        let zero = fs.get(&[0]).unwrap();
        let rw: Vec<String> = fs.return_words(zero).iter().map(|w| w.to_string()).collect();
        assert_eq!(rw, vec!["01", "0"]);
    }
}
