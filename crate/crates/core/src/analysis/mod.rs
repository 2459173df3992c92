//! Factor-level analysis of Arnoux-Rauzy prefixes: languages, special
//! factors, Rauzy graphs, bispecial factors, return words and derived words.
//!
//! Everything here compares factors symbol by symbol. Language-level answers
//! that depend on having seen enough of the infinite word go through
//! [`stabilize`], which doubles the buffer until two consecutive sizes agree.

mod bispecial;
mod factors;
mod rauzy;
mod returns;

pub use bispecial::{bispecial, bispecial_with_budget, BispecialLengths, BispecialRecord};
pub use factors::{
    factor_complexity, factor_set, special_factors, special_factors_in, Factor, FactorSet,
    SpecialFactors,
};
pub use rauzy::{check_rauzy_special_property, rauzy_graph, NrcWindow, RauzyCheck, RauzyGraph};
pub use returns::{derived_word, occurrences, return_words_bruteforce, DerivedWord};

use crate::error::{Error, Result};
use crate::generate::ArPrefix;

/// A value computed from a finite prefix together with the prefix that produced it.
#[derive(Debug, Clone)]
pub struct Stable<T> {
    pub value: T,
    pub prefix: ArPrefix,
}

/// Evaluates `f` on `prefix` (grown to at least `min_len`) and on its doubling,
/// doubling further until two consecutive results agree.
pub fn stabilize<T, F>(prefix: &ArPrefix, min_len: usize, what: &str, f: F) -> Result<Stable<T>>
where
    T: PartialEq,
    F: Fn(&ArPrefix) -> Result<T>,
{
    let grow = |p: &ArPrefix| -> Result<ArPrefix> {
        p.doubled().map_err(|e| match e {
            Error::Budget { budget, .. } => Error::Inconclusive(format!(
                "{what} still changing at {} symbols (budget {budget})",
                p.len()
            )),
            other => other,
        })
    };
    let mut current = prefix.clone();
    if current.len() < min_len {
        current = current.regrow(min_len).map_err(|e| match e {
            Error::Budget { budget, .. } => Error::Inconclusive(format!(
                "{what} needs at least {min_len} symbols (budget {budget})"
            )),
            other => other,
        })?;
    }
    let mut value = f(&current)?;
    loop {
        let next = grow(&current)?;
        let next_value = f(&next)?;
        if next_value == value {
            return Ok(Stable { value, prefix: current });
        }
        current = next;
        value = next_value;
    }
}
