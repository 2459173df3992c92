use crate::error::{Error, Result};
use crate::generate::ArPrefix;
use crate::word::{canonical_relabel, Word};

/// Starting positions of `w` in `buffer`. The empty word occurs before every letter.
pub fn occurrences(buffer: &[u8], w: &[u8]) -> Vec<usize> {
    if w.is_empty() {
        return (0..buffer.len()).collect();
    }
    if w.len() > buffer.len() {
        return Vec::new();
    }
    buffer
        .windows(w.len())
        .enumerate()
        .filter_map(|(p, win)| (win == w).then_some(p))
        .collect()
}

/// Distinct return words to `w` observed in the prefix, in order of first appearance.
pub fn return_words_bruteforce(prefix: &ArPrefix, w: &Word) -> Result<Vec<Word>> {
    let occ = occurrences(prefix.symbols(), w.as_slice());
    if occ.len() < 2 {
        return Err(Error::Domain(format!(
            "`{w}` occurs {} time(s) in the prefix; return words need two occurrences",
            occ.len()
        )));
    }
    let buf = prefix.symbols();
    let mut seen: Vec<&[u8]> = Vec::new();
    for pair in occ.windows(2) {
        let r = &buf[pair[0]..pair[1]];
        if !seen.contains(&r) {
            seen.push(r);
        }
    }
    Ok(seen.into_iter().map(|r| Word::from_trusted(prefix.d(), r.to_vec())).collect())
}

/// The coding of a prefix by the return words to one of its prefixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedWord {
    pub base: Word,
    /// `j_0 j_1 ...` with return words numbered by first appearance.
    pub coding: Vec<u8>,
    /// `return_words[j]` is the return word coded by letter `j`.
    pub return_words: Vec<Word>,
}

impl DerivedWord {
    /// Concatenation `r_{j_0} r_{j_1} ⋯`.
    pub fn decode(&self) -> Vec<u8> {
        self.coding
            .iter()
            .flat_map(|&j| self.return_words[j as usize].as_slice().iter().copied())
            .collect()
    }

    /// Equal to `other` up to a bijective renaming of letters.
    pub fn is_order_isomorphic_to(&self, other: &[u8]) -> bool {
        self.coding.len() == other.len() && self.coding == canonical_relabel(other)
    }
}

/// First `len` letters of the derived word to the prefix `w`.
pub fn derived_word(prefix: &ArPrefix, w: &Word, len: usize) -> Result<DerivedWord> {
    let buf = prefix.symbols();
    if !w.is_prefix_of(buf) {
        return Err(Error::Domain(format!("`{w}` is not a prefix of the analyzed word")));
    }
    let occ = occurrences(buf, w.as_slice());
    if occ.len() < len + 1 {
        return Err(Error::Domain(format!(
            "a derived word of length {len} needs {} occurrences of `{w}`, found {}",
            len + 1,
            occ.len()
        )));
    }
    let mut return_words: Vec<Word> = Vec::new();
    let mut coding = Vec::with_capacity(len);
    for pair in occ.windows(2).take(len) {
        let r = &buf[pair[0]..pair[1]];
        let j = match return_words.iter().position(|x| x.as_slice() == r) {
            Some(j) => j,
            None => {
                return_words.push(Word::from_trusted(prefix.d(), r.to_vec()));
                return_words.len() - 1
            }
        };
        coding.push(j as u8);
    }
    Ok(DerivedWord { base: w.clone(), coding, return_words })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directive::DirectiveSequence;

    fn prefix(dir: &str, len: usize) -> ArPrefix {
        ArPrefix::generate(&DirectiveSequence::parse(dir, None).unwrap(), len).unwrap()
    }

    fn strings(ws: &[Word]) -> Vec<String> {
        let mut v: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn fibonacci_returns_to_zero() {
        let p = prefix(":01", 13);
        let rw = return_words_bruteforce(&p, &Word::from_digits(2, "0").unwrap()).unwrap();
        assert_eq!(strings(&rw), vec!["0", "01"]);
    }

    #[test]
    fn tribonacci_returns_to_010() {
        let p = prefix(":012", 1000);
        let rw = return_words_bruteforce(&p, &Word::from_digits(3, "010").unwrap()).unwrap();
        assert_eq!(strings(&rw), vec!["01", "010", "0102"]);
    }

    #[test]
    fn too_few_occurrences() {
        let p = prefix(":01", 13);
        assert!(return_words_bruteforce(&p, &Word::from_digits(2, "11").unwrap()).is_err());
        assert!(return_words_bruteforce(&p, &Word::from_digits(2, "0100101001001").unwrap())
            .is_err());
    }

    #[test]
    fn derived_word_to_empty_word_is_the_word() {
        let p = prefix(":012", 200);
        let dw = derived_word(&p, &Word::empty(3).unwrap(), 150).unwrap();
        assert_eq!(dw.coding, &p.symbols()[..150]);
        assert_eq!(dw.decode(), &p.symbols()[..150]);
    }

    #[test]
    fn tribonacci_derived_to_zero_is_shifted_word() {
        let p = prefix(":012", 200);
        let dw = derived_word(&p, &Word::from_digits(3, "0").unwrap(), 13).unwrap();
        let shifted = ArPrefix::generate(&DirectiveSequence::parse(":120", None).unwrap(), 13)
            .unwrap();
        assert!(dw.is_order_isomorphic_to(shifted.symbols()));
        assert_eq!(dw.decode(), &p.symbols()[..dw.decode().len()]);
    }

    #[test]
    fn fibonacci_derived_to_010() {
        let p = prefix(":01", 200);
        let dw = derived_word(&p, &Word::from_digits(2, "010").unwrap(), 5).unwrap();
        let shifted = ArPrefix::generate(&DirectiveSequence::parse(":01", None).unwrap(), 5)
            .unwrap();
        assert!(dw.is_order_isomorphic_to(shifted.symbols()));
    }

    #[test]
    fn derived_word_requires_prefix() {
        let p = prefix(":01", 100);
        assert!(derived_word(&p, &Word::from_digits(2, "1").unwrap(), 3).is_err());
        assert!(derived_word(&p, &Word::from_digits(2, "0").unwrap(), 1000).is_err());
    }
}
