use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::directive::DirectiveSequence;
use crate::error::Result;
use crate::matrix::IncidenceMatrix;
use crate::morphism::{expand_elementary, Morphism};
use crate::word::{ParikhVector, Word};
use crate::DEFAULT_BUDGET;

/// The `k`-th bispecial factor `B(k)` of a standard Arnoux-Rauzy word and its
/// `d` return words `ψ(0), ..., ψ(d-1)` with `ψ = φ_{i_0}⋯φ_{i_{k-1}}`.
///
/// Lengths are always present. The words themselves are only materialized
/// when they fit in the memory budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BispecialRecord {
    pub k: usize,
    pub length: BigUint,
    pub factor: Option<Word>,
    pub return_word_lengths: Vec<BigUint>,
    pub return_words: Option<Vec<Word>>,
}

pub fn bispecial(directive: &DirectiveSequence, k: usize) -> Result<BispecialRecord> {
    bispecial_with_budget(directive, k, DEFAULT_BUDGET)
}

pub fn bispecial_with_budget(
    directive: &DirectiveSequence,
    k: usize,
    budget: usize,
) -> Result<BispecialRecord> {
    directive.require_valid_ar()?;
    let d = directive.d();

    // V(B(k)) = Σ_{j<k} M_{i_0}⋯M_{i_{j-1}} e_{i_j}; the return-word lengths
    // are the column sums of M_{i_0}⋯M_{i_{k-1}}.
    let mut product = IncidenceMatrix::identity(d);
    let mut parikh = ParikhVector::zero(d);
    for j in 0..k {
        let i = directive.symbol(j) as usize;
        parikh = parikh.add(&product.apply(&ParikhVector::unit(d, i))?)?;
        product = product.mul(&Morphism::elementary(i, d)?.incidence())?;
    }
    let length = parikh.total();
    let return_word_lengths = product.column_sums();

    let budget_big = BigUint::from(budget);
    let factor = (length <= budget_big).then(|| {
        // B(k) = φ_{i_0}(B'(k-1)) i_0, unrolled from B(0) = ε on the k-shifted directive.
        let mut x: Vec<u8> = Vec::new();
        for j in (0..k).rev() {
            let i = directive.symbol(j);
            x = expand_elementary(i, &x, usize::MAX);
            x.push(i);
        }
        Word::from_trusted(d, x)
    });
    let return_words = return_word_lengths.iter().all(|l| l <= &budget_big).then(|| {
        (0..d as u8)
            .map(|a| {
                let mut x = vec![a];
                for j in (0..k).rev() {
                    x = expand_elementary(directive.symbol(j), &x, usize::MAX);
                }
                Word::from_trusted(d, x)
            })
            .collect()
    });

    Ok(BispecialRecord { k, length, factor, return_word_lengths, return_words })
}

/// Memoized bispecial lengths `|B(k)|` and image lengths `|φ_{i_0}⋯φ_{i_{k-1}}(a)|`,
/// computed by incidence-matrix products without materializing any word.
///
/// Build it to the needed depth first, then share it read-only.
#[derive(Debug, Clone)]
pub struct BispecialLengths {
    directive: DirectiveSequence,
    steps: Vec<IncidenceMatrix>,
    lengths: Vec<BigUint>,
    images: Vec<Vec<BigUint>>,
}

impl BispecialLengths {
    pub fn new(directive: &DirectiveSequence) -> Result<Self> {
        directive.require_valid_ar()?;
        let d = directive.d();
        let steps = (0..d)
            .map(|i| Morphism::elementary(i, d).map(|m| m.incidence()))
            .collect::<Result<Vec<_>>>()?;
        Ok(BispecialLengths {
            directive: directive.clone(),
            steps,
            lengths: vec![BigUint::zero()],
            images: vec![vec![BigUint::one(); d]],
        })
    }

    pub fn directive(&self) -> &DirectiveSequence {
        &self.directive
    }

    /// Largest `k` for which lengths are available.
    pub fn depth(&self) -> usize {
        self.lengths.len() - 1
    }

    fn push_level(&mut self) {
        let k = self.depth();
        let i = self.directive.symbol(k) as usize;
        let row = &self.images[k];
        let next_len = &self.lengths[k] + &row[i];
        let next_row = self.steps[i].left_apply(row).expect("row has length d");
        self.lengths.push(next_len);
        self.images.push(next_row);
    }

    pub fn ensure_depth(&mut self, k: usize) {
        while self.depth() < k {
            self.push_level();
        }
    }

    /// Extends until `|B(K)| >= n`, plus one more level so that images at
    /// depth `K + 1` are available.
    pub fn ensure_covers(&mut self, n: &BigUint) {
        while self.lengths.last().expect("nonempty") < n {
            self.push_level();
        }
        let k = self.depth();
        self.ensure_depth(k + 1);
    }

    pub fn bispecial_len(&self, k: usize) -> Option<&BigUint> {
        self.lengths.get(k)
    }

    /// `|φ_{i_0}⋯φ_{i_{k-1}}(a)|`.
    pub fn image_len(&self, k: usize, a: usize) -> Option<&BigUint> {
        self.images.get(k).and_then(|row| row.get(a))
    }

    /// The unique `k >= 1` with `|B(k-1)| < n <= |B(k)|`, if already covered.
    pub fn bracket(&self, n: &BigUint) -> Option<usize> {
        if n.is_zero() {
            return None;
        }
        let k = self.lengths.partition_point(|l| l < n);
        (k < self.lengths.len()).then_some(k)
    }
}
