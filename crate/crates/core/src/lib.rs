//! Arnoux-Rauzy words over `{0, ..., d-1}`: prefix generation from directive
//! sequences, factor analysis, and the non-repetitive complexity functions
//! computed both in closed form and by brute force.

pub mod analysis;
pub mod complexity;
pub mod dbonacci;
pub mod directive;
pub mod error;
pub mod generate;
pub mod matrix;
pub mod morphism;
pub mod verify;
pub mod word;

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 64;

/// Default cap on materialized prefix length, in symbols.
pub const DEFAULT_BUDGET: usize = 1 << 28;

pub use analysis::{BispecialLengths, BispecialRecord, DerivedWord, FactorSet, RauzyGraph};
pub use complexity::{ComplexityRow, ComplexityTable, TableOptions, WindowCertificate};
pub use dbonacci::DBonacciNumbers;
pub use directive::DirectiveSequence;
pub use error::{Error, Result};
pub use generate::{generate_prefix, ArPrefix};
pub use matrix::IncidenceMatrix;
pub use morphism::Morphism;
pub use verify::{verify, VerifyOptions, VerifyReport};
pub use word::{Letter, ParikhVector, Word};
