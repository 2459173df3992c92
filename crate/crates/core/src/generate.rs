//! Prefix generation for standard Arnoux-Rauzy words.

use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::morphism::expand_elementary;
use crate::word::Word;
use crate::DEFAULT_BUDGET;

/// A materialized prefix of the standard Arnoux-Rauzy word with a given directive.
///
/// The buffer is `φ_{i_0}⋯φ_{i_{k-1}}(i_k)` truncated to the requested length,
/// where `k` (the depth) is the first index whose image is long enough. Each of
/// these words is a prefix of the next, so buffers generated from the same
/// directive are prefixes of one another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArPrefix {
    directive: DirectiveSequence,
    buffer: Word,
    depth: usize,
    budget: usize,
}

impl ArPrefix {
    pub fn generate(directive: &DirectiveSequence, len: usize) -> Result<Self> {
        ArPrefix::generate_with_budget(directive, len, DEFAULT_BUDGET)
    }

    pub fn generate_with_budget(
        directive: &DirectiveSequence,
        len: usize,
        budget: usize,
    ) -> Result<Self> {
        directive.require_valid_ar()?;
        if len > budget {
            return Err(Error::Budget { requested: len, budget });
        }
        let d = directive.d();
        if len == 0 {
            return Ok(ArPrefix {
                directive: directive.clone(),
                buffer: Word::from_trusted(d, Vec::new()),
                depth: 0,
                budget,
            });
        }

        // |φ_{i_0}⋯φ_{i_{k-1}}(a)| for every letter a, saturating.
        let mut image_len = vec![1u64; d];
        let mut depth = 0;
        while image_len[directive.symbol(depth) as usize] < len as u64 {
            let i = directive.symbol(depth) as usize;
            let base = image_len[i];
            for (a, l) in image_len.iter_mut().enumerate() {
                if a != i {
                    *l = l.saturating_add(base);
                }
            }
            depth += 1;
        }

        let mut symbols = vec![directive.symbol(depth)];
        for j in (0..depth).rev() {
            symbols = expand_elementary(directive.symbol(j), &symbols, len);
        }
        debug_assert_eq!(symbols.len(), len);
        Ok(ArPrefix {
            directive: directive.clone(),
            buffer: Word::from_trusted(d, symbols),
            depth,
            budget,
        })
    }

    pub fn directive(&self) -> &DirectiveSequence {
        &self.directive
    }

    pub fn word(&self) -> &Word {
        &self.buffer
    }

    pub fn symbols(&self) -> &[u8] {
        self.buffer.as_slice()
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    pub fn d(&self) -> usize {
        self.directive.d()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// A new prefix of `len` symbols from the same directive and budget.
    pub fn regrow(&self, len: usize) -> Result<ArPrefix> {
        ArPrefix::generate_with_budget(&self.directive, len, self.budget)
    }

    /// A new prefix twice as long as this one.
    pub fn doubled(&self) -> Result<ArPrefix> {
        self.regrow((self.len() * 2).max(1))
    }
}

/// Convenience wrapper around [`ArPrefix::generate`].
pub fn generate_prefix(directive: &DirectiveSequence, len: usize) -> Result<ArPrefix> {
    ArPrefix::generate(directive, len)
}
