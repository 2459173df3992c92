//! Formula-versus-oracle verification with invariant checks, reported as JSON.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::complexity::{complexity_table, ComplexityRow, TableOptions, WindowCertificate};
use crate::directive::DirectiveSequence;
use crate::error::Result;
use crate::generate::ArPrefix;
use crate::word::format_symbols;

/// Deliberate corruption of the formula side, used to exercise failure paths.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to every `nrC` formula value.
    Nrc,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub table: TableOptions,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub n: Option<usize>,
    pub check: &'static str,
    pub detail: String,
    pub certificate: Option<WindowCertificate>,
}

impl Failure {
    fn at(row: &ComplexityRow, check: &'static str, detail: String) -> Failure {
        Failure { n: Some(row.n), check, detail, certificate: row.certificate.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "check": self.check,
            "detail": self.detail,
            "certificate": self.certificate.as_ref().map(certificate_json),
        })
    }
}

pub fn certificate_json(c: &WindowCertificate) -> Value {
    let word = |w: &Option<crate::word::Word>| w.as_ref().map(|w| format_symbols(w.d(), w.as_slice()));
    json!({
        "n": c.n,
        "h": c.h,
        "m": c.m,
        "right_endpoint": word(&c.right_endpoint),
        "left_endpoint": word(&c.left_endpoint),
        "endpoints_special": c.endpoints_special,
    })
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub directive: DirectiveSequence,
    pub n_max: usize,
    pub rows: Vec<ComplexityRow>,
    pub failures: Vec<Failure>,
    pub stable_rows: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Exact fraction `stable/total`.
    pub fn stable_fraction(&self) -> String {
        format!("{}/{}", self.stable_rows, self.rows.len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "directive": self.directive.to_string(),
            "d": self.directive.d(),
            "n_max": self.n_max,
            "rows": self.rows.iter().map(ComplexityRow::to_json).collect::<Vec<_>>(),
            "failures": self.failures.iter().map(Failure::to_json).collect::<Vec<_>>(),
            "stable_fraction": self.stable_fraction(),
        })
    }
}

pub fn verify(directive: &DirectiveSequence, n_max: usize, options: &VerifyOptions) -> Result<VerifyReport> {
    let mut table = complexity_table(directive, n_max, &options.table)?;
    if options.fault == Some(Fault::Nrc) {
        for row in &mut table.rows {
            row.nrc_formula += 1u32;
            if let Some(o) = row.nrc_oracle {
                row.agree_nrc = Some(row.nrc_formula == BigUint::from(o));
            }
        }
    }
    let d = directive.d();
    let mut failures = Vec::new();

    for row in table.stable_rows() {
        if row.agree_nrc != Some(true) {
            failures.push(Failure::at(
                row,
                "nrc_formula_vs_oracle",
                format!("formula {} oracle {:?}", row.nrc_formula, row.nrc_oracle),
            ));
        }
        if row.agree_inrc != Some(true) {
            failures.push(Failure::at(
                row,
                "inrc_formula_vs_oracle",
                format!("formula {} oracle {:?}", row.inrc_formula, row.inrc_oracle),
            ));
        }
        let expected_c = BigUint::from((d - 1) * row.n + 1);
        if row.complexity != expected_c {
            failures.push(Failure::at(
                row,
                "factor_complexity",
                format!("C = {} but (d-1)n+1 = {expected_c}", row.complexity),
            ));
        }
        if let (Some(inrc), Some(nrc), Some(r)) = (row.inrc_oracle, row.nrc_oracle, row.recurrence) {
            let c = row.complexity.clone();
            let ok = inrc <= nrc && BigUint::from(nrc) <= c && c <= BigUint::from(r + 1 - row.n);
            if !ok {
                failures.push(Failure::at(
                    row,
                    "chain",
                    format!("inrC {inrc}, nrC {nrc}, C {c}, R-n+1 {}", r + 1 - row.n),
                ));
            }
        }
        if let (Some(cert), Some(len)) = (&row.certificate, row.buffer_len) {
            let prefix = ArPrefix::generate_with_budget(directive, len, options.table.budget)?;
            if !cert.verify(prefix.symbols(), d)? {
                failures.push(Failure::at(row, "certificate", "window certificate does not check".into()));
            }
        }
    }

    let mut by_bracket: BTreeMap<usize, Vec<&ComplexityRow>> = BTreeMap::new();
    for row in &table.rows {
        by_bracket.entry(row.k).or_default().push(row);
    }
    for rows in by_bracket.values() {
        let first = rows[0];
        for row in &rows[1..] {
            if row.nrc_formula != &first.nrc_formula + BigUint::from(row.n - first.n) {
                failures.push(Failure::at(
                    row,
                    "piecewise_linear",
                    format!("nrC - n changes inside bracket k = {}", row.k),
                ));
            }
            if row.inrc_formula != first.inrc_formula {
                failures.push(Failure::at(
                    row,
                    "inrc_constant_on_bracket",
                    format!("inrC changes inside bracket k = {}", row.k),
                ));
            }
        }
    }

    let stable_rows = table.stable_rows().count();
    Ok(VerifyReport { directive: directive.clone(), n_max, rows: table.rows, failures, stable_rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tribonacci_passes() {
        let ds = DirectiveSequence::parse(":012", None).unwrap();
        let report = verify(&ds, 40, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.stable_fraction(), "40/40");
        let json = report.to_json();
        assert_eq!(json["d"], 3);
        assert_eq!(json["rows"].as_array().unwrap().len(), 40);
    }

    #[test]
    fn injected_fault_is_caught_with_certificate() {
        let ds = DirectiveSequence::parse(":01", None).unwrap();
        let options = VerifyOptions { fault: Some(Fault::Nrc), ..VerifyOptions::default() };
        let report = verify(&ds, 10, &options).unwrap();
        assert!(!report.passed());
        let f = &report.failures[0];
        assert_eq!(f.check, "nrc_formula_vs_oracle");
        assert!(f.certificate.is_some());
        assert!(report.to_json()["failures"][0]["certificate"]["h"].is_number());
    }
}
