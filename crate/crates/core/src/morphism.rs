//! Morphisms of the free monoid over `{0, ..., d-1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IncidenceMatrix;
use crate::word::{check_alphabet, Letter, Word};

/// A non-erasing morphism given by the images of the letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    d: usize,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let d = images.len();
        check_alphabet(d)?;
        for (a, img) in images.iter().enumerate() {
            if img.d() != d {
                return Err(Error::AlphabetMismatch { left: d, right: img.d() });
            }
            if img.is_empty() {
                return Err(Error::Domain(format!("image of letter {a} is empty")));
            }
        }
        Ok(Morphism { d, images })
    }

    pub fn identity(d: usize) -> Result<Self> {
        check_alphabet(d)?;
        let images = (0..d).map(|a| Word::from_trusted(d, vec![a as u8])).collect();
        Ok(Morphism { d, images })
    }

    /// The elementary Arnoux-Rauzy morphism `i -> i`, `j -> ij` for `j != i`.
    pub fn elementary(i: usize, d: usize) -> Result<Self> {
        let i = Letter::new(i, d)?.0;
        let images = (0..d as u8)
            .map(|j| Word::from_trusted(d, if j == i { vec![i] } else { vec![i, j] }))
            .collect();
        Ok(Morphism { d, images })
    }

    /// `a -> 0(a+1)` for `a < d-1` and `d-1 -> 0`.
    pub fn dbonacci(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("d-bonacci morphism needs d >= 2, got {d}")));
        }
        check_alphabet(d)?;
        let images = (0..d as u8)
            .map(|a| {
                Word::from_trusted(d, if (a as usize) < d - 1 { vec![0, a + 1] } else { vec![0] })
            })
            .collect();
        Ok(Morphism { d, images })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a.index()]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.d() != self.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: w.d() });
        }
        Ok(Word::from_trusted(self.d, self.apply_symbols(w.as_slice())))
    }

    pub(crate) fn apply_symbols(&self, symbols: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(symbols.len() * 2);
        for &s in symbols {
            out.extend_from_slice(self.images[s as usize].as_slice());
        }
        out
    }

    /// `self ∘ inner`, i.e. `a -> self(inner(a))`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if self.d != inner.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: inner.d });
        }
        let images = inner.images.iter().map(|w| self.apply(w)).collect::<Result<Vec<_>>>()?;
        Ok(Morphism { d: self.d, images })
    }

    pub fn pow(&self, k: usize) -> Morphism {
        let mut acc = Morphism::identity(self.d).expect("valid alphabet");
        for _ in 0..k {
            acc = self.compose(&acc).expect("same alphabet");
        }
        acc
    }

    /// `[M]_{ab} = |image(b)|_a`.
    pub fn incidence(&self) -> IncidenceMatrix {
        let mut m = IncidenceMatrix::zero(self.d);
        for (b, img) in self.images.iter().enumerate() {
            for (a, count) in img.parikh().0.into_iter().enumerate() {
                m.set(a, b, count);
            }
        }
        m
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(a, w)| format!("{a}->{w}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Applies the elementary morphism `φ_i` to `src`, stopping after `limit` symbols.
pub(crate) fn expand_elementary(i: u8, src: &[u8], limit: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(limit.min(src.len().saturating_mul(2)));
    for &s in src {
        if out.len() >= limit {
            break;
        }
        out.push(i);
        if s != i {
            out.push(s);
        }
    }
    out.truncate(limit);
    out
}
