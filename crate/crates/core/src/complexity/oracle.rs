//! Brute-force oracles for `C`, `nrC`, `inrC` and `R` on finite prefixes.
//!
//! A prefix only approximates the infinite word, so the oracles run on a
//! ladder of prefixes of doubling length. A row is marked stable when the
//! factor count, the longest distinct window (value and start) and the
//! longest return agree on two consecutive rungs, the first repeat has been
//! seen, and the smaller rung extends at least one recurrence window past the
//! end of the reported window.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::analysis::special_factors_in;
use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::generate::ArPrefix;
use crate::word::Word;

use super::index::FactorIndex;

/// Lazily generated prefixes of length `base * 2^j`, up to the budget.
#[derive(Debug)]
pub struct PrefixLadder {
    directive: DirectiveSequence,
    base: usize,
    budget: usize,
    rungs: Vec<OnceLock<ArPrefix>>,
}

impl PrefixLadder {
    pub fn new(directive: &DirectiveSequence, base: usize, budget: usize) -> Result<Self> {
        directive.require_valid_ar()?;
        let base = base.max(1);
        let mut count = 0;
        while count < usize::BITS as usize
            && base.checked_shl(count as u32).is_some_and(|len| len <= budget)
        {
            count += 1;
        }
        let rungs = (0..count).map(|_| OnceLock::new()).collect();
        Ok(PrefixLadder { directive: directive.clone(), base, budget, rungs })
    }

    pub fn directive(&self) -> &DirectiveSequence {
        &self.directive
    }

    pub fn rung_len(&self, j: usize) -> usize {
        self.base << j
    }

    pub fn rungs(&self) -> usize {
        self.rungs.len()
    }

    /// `None` once the rung would exceed the budget.
    pub fn get(&self, j: usize) -> Option<&ArPrefix> {
        let cell = self.rungs.get(j)?;
        Some(cell.get_or_init(|| {
            ArPrefix::generate_with_budget(&self.directive, self.rung_len(j), self.budget)
                .expect("rung length is within budget and the directive is valid")
        }))
    }

    fn first_rung_at_least(&self, len: usize) -> Option<usize> {
        (0..self.rungs.len()).find(|&j| self.rung_len(j) >= len)
    }
}

/// Witness for a non-repetitive window: the `m` factors `f_n(h), ..., f_n(h+m-1)`
/// are pairwise distinct. When `endpoints_special`, `f_n(h-1)` is right special,
/// `f_n(h+m)` is left special and both occur inside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCertificate {
    pub n: usize,
    pub h: usize,
    pub m: usize,
    pub right_endpoint: Option<Word>,
    pub left_endpoint: Option<Word>,
    pub endpoints_special: bool,
}

impl WindowCertificate {
    /// Rechecks the certificate against `buffer` by direct symbol comparison.
    pub fn verify(&self, buffer: &[u8], d: usize) -> Result<bool> {
        let n = self.n;
        if self.h + self.m + n - 1 > buffer.len() {
            return Ok(false);
        }
        let window: Vec<&[u8]> = (self.h..self.h + self.m).map(|p| &buffer[p..p + n]).collect();
        let distinct: HashSet<&[u8]> = window.iter().copied().collect();
        if distinct.len() != self.m {
            return Ok(false);
        }
        if !self.endpoints_special {
            return Ok(true);
        }
        let (Some(right), Some(left)) = (&self.right_endpoint, &self.left_endpoint) else {
            return Ok(false);
        };
        if self.h == 0 || self.h + self.m + n > buffer.len() {
            return Ok(false);
        }
        let before = &buffer[self.h - 1..self.h - 1 + n];
        let after = &buffer[self.h + self.m..self.h + self.m + n];
        let specials = special_factors_in(buffer, d, n)?;
        Ok(before == right.as_slice()
            && after == left.as_slice()
            && distinct.contains(before)
            && distinct.contains(after)
            && specials.right.contains(right)
            && specials.left.contains(left))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NrcObservation {
    pub value: usize,
    pub certificate: WindowCertificate,
    pub stable: bool,
    pub buffer_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceObservation {
    pub value: usize,
    pub stable: bool,
    pub buffer_len: usize,
}

/// Everything the oracles learn about length `n` from one prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub n: usize,
    pub complexity: usize,
    pub nrc: usize,
    pub certificate: WindowCertificate,
    pub inrc: Option<usize>,
    pub recurrence: Option<usize>,
    pub stable: bool,
    pub buffer_len: usize,
}

impl Observation {
    fn from_prefix(prefix: &ArPrefix, n: usize) -> Observation {
        let buf = prefix.symbols();
        let idx = FactorIndex::build(buf, n);
        let scan = idx.longest_distinct_window();
        let word = |p: usize| Word::from_trusted(prefix.d(), idx.factor(p).to_vec());
        let certificate = WindowCertificate {
            n,
            h: scan.h,
            m: scan.m,
            right_endpoint: (scan.h >= 1).then(|| word(scan.h - 1)),
            left_endpoint: (scan.h + scan.m + n <= buf.len()).then(|| word(scan.h + scan.m)),
            endpoints_special: scan.endpoints_special,
        };
        Observation {
            n,
            complexity: idx.count(),
            nrc: scan.m,
            certificate,
            inrc: idx.first_repeat(),
            recurrence: idx.longest_return().map(|g| g + n - 1),
            stable: false,
            buffer_len: buf.len(),
        }
    }

    fn agrees_with(&self, larger: &Observation) -> bool {
        self.complexity == larger.complexity
            && self.nrc == larger.nrc
            && self.certificate.h == larger.certificate.h
            && self.recurrence.is_some()
            && self.recurrence == larger.recurrence
            && self.inrc.is_some()
    }

    fn covers_certificate(&self) -> bool {
        let c = &self.certificate;
        match self.recurrence {
            Some(r) => self.buffer_len >= c.h + c.m + self.n + r,
            None => false,
        }
    }
}

/// Climbs the ladder from the first rung of at least `min_len` symbols until
/// the observation for `n` is stable. Returns the last observation (unstable)
/// when the budget runs out, or `None` if not even one rung fits.
pub fn observe(ladder: &PrefixLadder, n: usize, min_len: usize) -> Option<Observation> {
    assert!(n >= 1);
    let mut j = ladder.first_rung_at_least(min_len.max(n + 1))?;
    let mut current = Observation::from_prefix(ladder.get(j)?, n);
    loop {
        let Some(next_prefix) = ladder.get(j + 1) else {
            return Some(current);
        };
        let next = Observation::from_prefix(next_prefix, n);
        if current.agrees_with(&next) && current.covers_certificate() {
            current.stable = true;
            return Some(current);
        }
        current = next;
        j += 1;
    }
}

fn check_n(prefix: &ArPrefix, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("complexity functions are defined for n >= 1".into()));
    }
    if prefix.len() < n {
        return Err(Error::Domain(format!(
            "prefix of length {} is shorter than n = {n}",
            prefix.len()
        )));
    }
    Ok(())
}

fn ladder_from(prefix: &ArPrefix) -> Result<PrefixLadder> {
    PrefixLadder::new(prefix.directive(), prefix.len(), prefix.budget())
}

/// Longest run of consecutive, pairwise distinct length-`n` factors, starting
/// from `prefix` and growing it while the answer changes.
pub fn nrc_oracle(prefix: &ArPrefix, n: usize) -> Result<NrcObservation> {
    check_n(prefix, n)?;
    let obs = observe(&ladder_from(prefix)?, n, prefix.len())
        .ok_or(Error::Budget { requested: prefix.len(), budget: prefix.budget() })?;
    Ok(NrcObservation {
        value: obs.nrc,
        certificate: obs.certificate,
        stable: obs.stable,
        buffer_len: obs.buffer_len,
    })
}

/// Position of the first repeated length-`n` factor. Exact once a repeat is
/// seen, so the prefix is grown only until that happens.
pub fn inrc_oracle(prefix: &ArPrefix, n: usize) -> Result<usize> {
    check_n(prefix, n)?;
    let mut current = prefix.clone();
    loop {
        if let Some(m) = FactorIndex::build(current.symbols(), n).first_repeat() {
            return Ok(m);
        }
        current = current.doubled().map_err(|_| {
            Error::Inconclusive(format!("no repeated factor of length {n} within the budget"))
        })?;
    }
}

/// `R(n) = n - 1 + (longest return word to a factor of length n)`.
pub fn recurrence_oracle(prefix: &ArPrefix, n: usize) -> Result<RecurrenceObservation> {
    check_n(prefix, n)?;
    let mut current = prefix.clone();
    let mut value = FactorIndex::build(current.symbols(), n).longest_return();
    loop {
        let next = match current.doubled() {
            Ok(p) => p,
            Err(_) => {
                return value
                    .map(|v| RecurrenceObservation {
                        value: v + n - 1,
                        stable: false,
                        buffer_len: current.len(),
                    })
                    .ok_or_else(|| {
                        Error::Inconclusive(format!(
                            "some factor of length {n} occurs only once within the budget"
                        ))
                    });
            }
        };
        let next_value = FactorIndex::build(next.symbols(), n).longest_return();
        if let Some(v) = value.filter(|_| value == next_value) {
            return Ok(RecurrenceObservation {
                value: v + n - 1,
                stable: true,
                buffer_len: current.len(),
            });
        }
        current = next;
        value = next_value;
    }
}

/// `R(n)` by its definition: the shortest window length such that every
/// window of the buffer contains every length-`n` factor of the buffer.
pub fn recurrence_by_windows(buffer: &[u8], n: usize) -> Result<usize> {
    if n == 0 || n > buffer.len() {
        return Err(Error::Domain(format!("need 1 <= n <= {}", buffer.len())));
    }
    Ok(FactorIndex::build(buffer, n).shortest_covering_window())
}

/// `C(n)` counted with the fingerprint index.
pub fn complexity_oracle(buffer: &[u8], n: usize) -> Result<usize> {
    if n == 0 || n > buffer.len() {
        return Err(Error::Domain(format!("need 1 <= n <= {}", buffer.len())));
    }
    Ok(FactorIndex::build(buffer, n).count())
}
