//! Shared fixtures for the benchmarks.

use arlab_core::{ArPrefix, DirectiveSequence};

/// Directives benchmarked throughout: Fibonacci, Tribonacci, and an
/// eventually periodic directive over four letters.
pub fn directives() -> Vec<(&'static str, DirectiveSequence)> {
    [("Fibonacci", ":01"), ("Tribonacci", ":012"), ("mixed", "1:30121")]
        .into_iter()
        .map(|(name, text)| (name, DirectiveSequence::parse(text, None).expect("valid directive")))
        .collect()
}

pub fn prefix(directive: &DirectiveSequence, len: usize) -> ArPrefix {
    ArPrefix::generate(directive, len).expect("within the default budget")
}
