//! Factor complexity `C`, non-repetitive complexities `nrC` and `inrC`, and
//! the recurrence function `R`: brute-force oracles over prefixes and
//! closed forms over directive sequences.

mod formula;
mod index;
mod oracle;
mod table;

pub use formula::{
    bracket_bispecial, inrc_formula, inrc_formula_with, nrc_formula, nrc_formula_with,
    s_last_occurrence, LastIndex, NrcFormula,
};
pub use oracle::{
    complexity_oracle, inrc_oracle, nrc_oracle, observe, recurrence_by_windows, recurrence_oracle,
    NrcObservation, Observation, PrefixLadder, RecurrenceObservation, WindowCertificate,
};
pub use table::{complexity_table, ComplexityRow, ComplexityTable, TableOptions, CSV_HEADER};
