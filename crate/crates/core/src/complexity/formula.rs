//! Closed-form `nrC` and `inrC` for standard Arnoux-Rauzy words.
//!
//! All lengths come from [`BispecialLengths`], so nothing is materialized and
//! values are exact at any `n`.

use num_bigint::BigUint;
use num_traits::One;

use crate::analysis::BispecialLengths;
use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::word::Letter;

/// Last occurrence of a letter before a given index of the directive.
/// `NegInfinity` sorts below every index and equals itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LastIndex {
    NegInfinity,
    At(usize),
}

impl std::fmt::Display for LastIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LastIndex::NegInfinity => f.write_str("-inf"),
            LastIndex::At(l) => write!(f, "{l}"),
        }
    }
}

/// `S_a(k)`: the largest `l < k` with `i_l = a`.
pub fn s_last_occurrence(directive: &DirectiveSequence, k: usize, a: Letter) -> Result<LastIndex> {
    let a = Letter::new(a.index(), directive.d())?;
    Ok((0..k)
        .rev()
        .find(|&l| directive.symbol(l) == a.0)
        .map_or(LastIndex::NegInfinity, LastIndex::At))
}

/// The unique `k` with `|B(k-1)| < n <= |B(k)|`.
pub fn bracket_bispecial(directive: &DirectiveSequence, n: u64) -> Result<usize> {
    let mut cache = BispecialLengths::new(directive)?;
    let n = positive(n)?;
    cache.ensure_covers(&n);
    Ok(cache.bracket(&n).expect("covered"))
}

/// Evaluation of `nrC(n)` with the quantities it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NrcFormula {
    pub n: u64,
    pub value: BigUint,
    pub k: usize,
    /// Smallest letter minimizing `S_a(k)` over `a != i_k`.
    pub letter: usize,
    /// Every letter attaining the minimum.
    pub minimizers: Vec<usize>,
    pub bispecial_len: BigUint,
    /// `|ψ(i_k a)|` for each `a != i_k`, where `ψ = φ_{i_0}⋯φ_{i_{k-1}}`:
    /// the lengths of the return-word pairs to `B(k)` that occur in the word.
    pub pair_lengths: Vec<(usize, BigUint)>,
    /// `nrC(|B(k)|)`, equal to the longest pair minus one.
    pub value_at_bispecial: BigUint,
}

fn positive(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("complexity functions are defined for n >= 1".into()));
    }
    Ok(BigUint::from(n))
}

fn covered(cache: &BispecialLengths, n: &BigUint) -> Result<usize> {
    let k = cache
        .bracket(n)
        .ok_or_else(|| Error::Internal(format!("bispecial cache does not reach n = {n}")))?;
    if cache.depth() < k + 1 {
        return Err(Error::Internal(format!("bispecial cache lacks depth {}", k + 1)));
    }
    Ok(k)
}

pub fn nrc_formula(directive: &DirectiveSequence, n: u64) -> Result<NrcFormula> {
    let mut cache = BispecialLengths::new(directive)?;
    cache.ensure_covers(&positive(n)?);
    nrc_formula_with(&cache, n)
}

/// As [`nrc_formula`], reading lengths from a cache that already covers `n`.
pub fn nrc_formula_with(cache: &BispecialLengths, n: u64) -> Result<NrcFormula> {
    let nb = positive(n)?;
    let k = covered(cache, &nb)?;
    let ds = cache.directive();
    let d = ds.d();
    let ik = ds.symbol(k) as usize;

    let others: Vec<usize> = (0..d).filter(|&a| a != ik).collect();
    let last: Vec<LastIndex> = others
        .iter()
        .map(|&a| s_last_occurrence(ds, k, Letter(a as u8)))
        .collect::<Result<_>>()?;
    let min = *last.iter().min().expect("d >= 2");
    let minimizers: Vec<usize> =
        others.iter().zip(&last).filter(|(_, s)| **s == min).map(|(&a, _)| a).collect();
    let letter = minimizers[0];

    let next = |a: usize| cache.image_len(k + 1, a).expect("depth checked");
    let chosen = next(letter);
    if let Some(&b) = minimizers.iter().find(|&&b| next(b) != chosen) {
        return Err(Error::Internal(format!(
            "letters {letter} and {b} both minimize S(k) at k = {k} but have image lengths {chosen} and {}",
            next(b)
        )));
    }

    let at = |a: usize| cache.image_len(k, a).expect("depth checked");
    let pair_lengths: Vec<(usize, BigUint)> = others.iter().map(|&a| (a, at(ik) + at(a))).collect();
    let longest = pair_lengths.iter().map(|(_, l)| l).max().expect("d >= 2");
    let value_at_bispecial = longest - BigUint::one();
    if &value_at_bispecial + BigUint::one() != *chosen {
        return Err(Error::Internal(format!(
            "longest return-word pair at k = {k} has length {longest}, image of {letter} has length {chosen}"
        )));
    }

    let bispecial_len = cache.bispecial_len(k).expect("depth checked").clone();
    let value = chosen + &nb - BigUint::one() - &bispecial_len;
    Ok(NrcFormula { n, value, k, letter, minimizers, bispecial_len, pair_lengths, value_at_bispecial })
}

/// `inrC(n) = |φ_{i_0}⋯φ_{i_{k-1}}(i_k)|` for the standard word.
pub fn inrc_formula(directive: &DirectiveSequence, n: u64) -> Result<BigUint> {
    let mut cache = BispecialLengths::new(directive)?;
    cache.ensure_covers(&positive(n)?);
    inrc_formula_with(&cache, n)
}

pub fn inrc_formula_with(cache: &BispecialLengths, n: u64) -> Result<BigUint> {
    let k = covered(cache, &positive(n)?)?;
    let ik = cache.directive().symbol(k) as usize;
    Ok(cache.image_len(k, ik).expect("depth checked").clone())
}
