//! Per-`n` comparison of formulas and oracles.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::BispecialLengths;
use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::DEFAULT_BUDGET;

use super::formula::{inrc_formula_with, nrc_formula_with};
use super::oracle::{observe, PrefixLadder, WindowCertificate};

pub const CSV_HEADER: &str =
    "n,C,nrC_formula,nrC_oracle,inrC_formula,inrC_oracle,R_oracle,k,agree_nrc,agree_inrc,stable";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// Largest prefix the oracles may generate.
    pub budget: usize,
    /// Length of the first prefix on the oracle ladder.
    pub min_prefix: usize,
    /// Oracles run for `n <= oracle_n_max`; `None` means every row.
    pub oracle_n_max: Option<usize>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { budget: DEFAULT_BUDGET, min_prefix: 1024, oracle_n_max: None }
    }
}

impl TableOptions {
    pub fn formulas_only() -> Self {
        TableOptions { oracle_n_max: Some(0), ..TableOptions::default() }
    }

    pub fn with_budget(budget: usize) -> Self {
        TableOptions { budget, min_prefix: 1024.min(budget), ..TableOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityRow {
    pub n: usize,
    /// Observed factor count, or `(d-1)n+1` when no oracle ran.
    pub complexity: BigUint,
    pub nrc_formula: BigUint,
    pub nrc_oracle: Option<usize>,
    pub inrc_formula: BigUint,
    pub inrc_oracle: Option<usize>,
    pub recurrence: Option<usize>,
    pub k: usize,
    pub agree_nrc: Option<bool>,
    pub agree_inrc: Option<bool>,
    pub stable: bool,
    pub certificate: Option<WindowCertificate>,
    pub buffer_len: Option<usize>,
}

impl ComplexityRow {
    pub fn agrees(&self) -> bool {
        self.agree_nrc != Some(false) && self.agree_inrc != Some(false)
    }

    pub fn csv_fields(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.n.to_string(),
            self.complexity.to_string(),
            self.nrc_formula.to_string(),
            opt(&self.nrc_oracle),
            self.inrc_formula.to_string(),
            opt(&self.inrc_oracle),
            opt(&self.recurrence),
            self.k.to_string(),
            opt(&self.agree_nrc),
            opt(&self.agree_inrc),
            self.stable.to_string(),
        ]
    }

    pub fn to_csv(&self) -> String {
        self.csv_fields().join(",")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "C": self.complexity.to_string(),
            "nrC_formula": self.nrc_formula.to_string(),
            "nrC_oracle": self.nrc_oracle,
            "inrC_formula": self.inrc_formula.to_string(),
            "inrC_oracle": self.inrc_oracle,
            "R_oracle": self.recurrence,
            "k": self.k,
            "agree_nrc": self.agree_nrc,
            "agree_inrc": self.agree_inrc,
            "stable": self.stable,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    pub directive: DirectiveSequence,
    pub rows: Vec<ComplexityRow>,
}

impl ComplexityTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.rows.iter().map(ComplexityRow::to_json).collect())
    }

    pub fn stable_rows(&self) -> impl Iterator<Item = &ComplexityRow> {
        self.rows.iter().filter(|r| r.stable)
    }
}

/// Builds rows `1..=n_max`. Formula columns are always filled; oracle columns
/// are filled for rows within `oracle_n_max` whose prefix fits the budget.
pub fn complexity_table(
    directive: &DirectiveSequence,
    n_max: usize,
    options: &TableOptions,
) -> Result<ComplexityTable> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let mut cache = BispecialLengths::new(directive)?;
    cache.ensure_covers(&BigUint::from(n_max));
    let cache = cache;

    let oracle_top = options.oracle_n_max.unwrap_or(n_max).min(n_max);
    let ladder = if oracle_top > 0 {
        Some(PrefixLadder::new(directive, options.min_prefix, options.budget)?)
    } else {
        None
    };
    let d = directive.d();

    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| -> Result<ComplexityRow> {
            let nrc = nrc_formula_with(&cache, n as u64)?;
            let inrc = inrc_formula_with(&cache, n as u64)?;
            let obs = match &ladder {
                Some(ladder) if n <= oracle_top => observe(ladder, n, n + 1),
                _ => None,
            };
            let mut row = ComplexityRow {
                n,
                complexity: BigUint::from((d - 1) * n + 1),
                nrc_formula: nrc.value,
                nrc_oracle: None,
                inrc_formula: inrc,
                inrc_oracle: None,
                recurrence: None,
                k: nrc.k,
                agree_nrc: None,
                agree_inrc: None,
                stable: false,
                certificate: None,
                buffer_len: None,
            };
            if let Some(obs) = obs {
                row.complexity = BigUint::from(obs.complexity);
                row.agree_nrc = Some(row.nrc_formula == BigUint::from(obs.nrc));
                row.agree_inrc = obs.inrc.map(|v| row.inrc_formula == BigUint::from(v));
                row.nrc_oracle = Some(obs.nrc);
                row.inrc_oracle = obs.inrc;
                row.recurrence = obs.recurrence;
                row.stable = obs.stable;
                row.buffer_len = Some(obs.buffer_len);
                row.certificate = Some(obs.certificate);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ComplexityTable { directive: directive.clone(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DirectiveSequence {
        DirectiveSequence::parse(s, None).unwrap()
    }

    #[test]
    fn fibonacci_rows_agree() {
        let table = complexity_table(&ds(":01"), 50, &TableOptions::default()).unwrap();
        for row in &table.rows {
            assert!(row.stable, "row {}", row.n);
            assert_eq!(row.nrc_formula, BigUint::from(row.n + 1));
            assert_eq!(row.agree_nrc, Some(true));
            assert_eq!(row.agree_inrc, Some(true));
        }
    }

    #[test]
    fn tribonacci_rows_agree() {
        let table = complexity_table(&ds(":012"), 50, &TableOptions::default()).unwrap();
        assert!(table.rows.iter().all(|r| r.stable && r.agrees()));
        let first: Vec<String> = table.rows[..3].iter().map(|r| r.nrc_formula.to_string()).collect();
        assert_eq!(first, ["3", "5", "6"]);
    }

    #[test]
    fn csv_shape() {
        let table = complexity_table(&ds(":01"), 2, &TableOptions::formulas_only()).unwrap();
        assert_eq!(table.to_csv(), format!("{CSV_HEADER}\n1,2,2,,2,,,1,,,false\n2,3,3,,3,,,2,,,false\n"));
    }

    #[test]
    fn guards() {
        let bad = DirectiveSequence::parse(":0", Some(2)).unwrap();
        assert!(matches!(
            complexity_table(&bad, 5, &TableOptions::default()),
            Err(Error::InvalidDirective(_))
        ));
        assert!(complexity_table(&ds(":01"), 0, &TableOptions::default()).is_err());
    }

    #[test]
    fn small_budget_leaves_rows_unstable() {
        let table = complexity_table(&ds(":012"), 20, &TableOptions::with_budget(64)).unwrap();
        assert!(table.rows.iter().any(|r| !r.stable));
        assert!(table.rows.iter().all(|r| r.agree_nrc.is_none() || r.buffer_len <= Some(64)));
    }
}
