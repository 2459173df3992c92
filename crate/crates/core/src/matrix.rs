//! Square matrices of arbitrary-precision naturals, used as incidence matrices.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::ParikhVector;

/// A `d x d` matrix with `BigUint` entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    d: usize,
    entries: Vec<BigUint>,
}

impl IncidenceMatrix {
    pub fn zero(d: usize) -> Self {
        IncidenceMatrix { d, entries: vec![BigUint::zero(); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = IncidenceMatrix::zero(d);
        for i in 0..d {
            m.entries[i * d + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Domain("matrix rows must form a square".into()));
        }
        let entries = rows.into_iter().flatten().map(BigUint::from).collect();
        Ok(IncidenceMatrix { d, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.d + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: BigUint) {
        self.entries[row * self.d + col] = value;
    }

    pub fn mul(&self, rhs: &IncidenceMatrix) -> Result<IncidenceMatrix> {
        if self.d != rhs.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: rhs.d });
        }
        let d = self.d;
        let mut out = IncidenceMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * d + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u64) -> IncidenceMatrix {
        let mut base = self.clone();
        let mut acc = IncidenceMatrix::identity(self.d);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    /// `M . v`.
    pub fn apply(&self, v: &ParikhVector) -> Result<ParikhVector> {
        if v.d() != self.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: v.d() });
        }
        let d = self.d;
        let out = (0..d)
            .map(|i| (0..d).map(|j| self.get(i, j) * &v.0[j]).sum())
            .collect();
        Ok(ParikhVector(out))
    }

    /// `row . M` for a row vector.
    pub fn left_apply(&self, row: &[BigUint]) -> Result<Vec<BigUint>> {
        if row.len() != self.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: row.len() });
        }
        let d = self.d;
        Ok((0..d)
            .map(|j| (0..d).map(|i| &row[i] * self.get(i, j)).sum())
            .collect())
    }

    /// `(1, ..., 1) . M`: entry `b` is the length of the image of letter `b`.
    pub fn column_sums(&self) -> Vec<BigUint> {
        (0..self.d).map(|j| (0..self.d).map(|i| self.get(i, j)).sum()).collect()
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            let row: Vec<String> = (0..self.d).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
