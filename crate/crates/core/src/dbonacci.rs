//! Exact fast path for the d-bonacci word, the fixed point of
//! `τ: a -> 0(a+1)` for `a < d-1` and `d-1 -> 0`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IncidenceMatrix;
use crate::morphism::Morphism;
use crate::word::ParikhVector;

/// `D_k` for `-d <= k <= k_max`, with `D_{-1} = 1` and `D_{-j} = 0` for `j >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DBonacciNumbers {
    d: usize,
    values: Vec<BigUint>,
}

fn check_order(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("d-bonacci needs d >= 2, got {d}")));
    }
    crate::word::check_alphabet(d)
}

impl DBonacciNumbers {
    pub fn new(d: usize, k_max: usize) -> Result<Self> {
        check_order(d)?;
        let mut values = vec![BigUint::zero(); d];
        values[d - 1] = BigUint::one();
        let mut numbers = DBonacciNumbers { d, values };
        numbers.extend_to(k_max);
        let tau = Morphism::dbonacci(d)?.incidence();
        let mut v = ParikhVector::unit(d, 0);
        for n in 0..=k_max.min(30) {
            v = tau.apply(&v).expect("alphabet sizes agree");
            for (j, entry) in v.0.iter().enumerate() {
                if entry != numbers.get(n as i64 - j as i64) {
                    return Err(Error::Internal(format!(
                        "M^{}e differs from the d-bonacci recurrence at component {j}",
                        n + 1
                    )));
                }
            }
        }
        Ok(numbers)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k_max(&self) -> usize {
        self.values.len() - self.d - 1
    }

    pub fn extend_to(&mut self, k_max: usize) {
        while self.values.len() < k_max + self.d + 1 {
            let len = self.values.len();
            let next = self.values[len - self.d..].iter().sum();
            self.values.push(next);
        }
    }

    /// `D_k` for `-d <= k <= k_max`.
    pub fn get(&self, k: i64) -> &BigUint {
        let idx = k + self.d as i64;
        assert!(idx >= 0 && (idx as usize) < self.values.len(), "D_{k} out of range");
        &self.values[idx as usize]
    }

    /// `D_0, ..., D_{k_max}`.
    pub fn values(&self) -> &[BigUint] {
        &self.values[self.d..]
    }

    /// `|B(k)| = (Σ_{i<d} (d-i) D_{k-i-1} - d) / (d-1)`.
    pub fn bispecial_len(&self, k: usize) -> Result<BigUint> {
        let d = self.d as i64;
        let sum: BigUint =
            (0..d).map(|i| BigUint::from((d - i) as u64) * self.get(k as i64 - i - 1)).sum();
        let numerator = sum - BigUint::from(self.d);
        let (q, r) = numerator.div_rem(&BigUint::from(self.d - 1));
        if !r.is_zero() {
            return Err(Error::Internal(format!("bispecial length for k = {k} is not an integer")));
        }
        Ok(q)
    }

    /// The `k` with `|B(k-1)| < n <= |B(k)|`, extending the table as needed.
    pub fn bracket(&mut self, n: u64) -> Result<usize> {
        if n == 0 {
            return Err(Error::Domain("complexity functions are defined for n >= 1".into()));
        }
        let n = BigUint::from(n);
        let mut k = 1;
        loop {
            self.extend_to(k + 1);
            if self.bispecial_len(k)? >= n {
                return Ok(k);
            }
            k += 1;
        }
    }
}

pub fn dbonacci_numbers(d: usize, k_max: usize) -> Result<DBonacciNumbers> {
    DBonacciNumbers::new(d, k_max)
}

pub fn bispecial_length_dbonacci(d: usize, k: usize) -> Result<BigUint> {
    DBonacciNumbers::new(d, k)?.bispecial_len(k)
}

/// `|τ^k(0)| = D_k`.
pub fn tau_power_length(d: usize, k: usize) -> Result<BigUint> {
    Ok(DBonacciNumbers::new(d, k)?.get(k as i64).clone())
}

/// Closed forms at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DBonacciRow {
    pub n: u64,
    pub k: usize,
    pub d_k: BigUint,
    pub bispecial_len: BigUint,
    pub nrc: BigUint,
    pub inrc: BigUint,
}

pub fn dbonacci_row(numbers: &mut DBonacciNumbers, n: u64) -> Result<DBonacciRow> {
    let k = numbers.bracket(n)?;
    let b = numbers.bispecial_len(k)?;
    let nrc = numbers.get(k as i64 + 1) + BigUint::from(n) - BigUint::one() - &b;
    Ok(DBonacciRow { n, k, d_k: numbers.get(k as i64).clone(), bispecial_len: b, nrc, inrc: numbers.get(k as i64).clone() })
}

/// `nrC(n) = D_{k+1} - 1 - |B(k)| + n`.
pub fn nrc_dbonacci(d: usize, n: u64) -> Result<BigUint> {
    Ok(dbonacci_row(&mut DBonacciNumbers::new(d, 1)?, n)?.nrc)
}

/// `inrC(n) = D_k`.
pub fn inrc_dbonacci(d: usize, n: u64) -> Result<BigUint> {
    Ok(dbonacci_row(&mut DBonacciNumbers::new(d, 1)?, n)?.inrc)
}

/// A half-open range `(low, high]` of `n` on which `inrC` takes `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InrcRange {
    pub low: BigUint,
    pub high: BigUint,
    pub value: BigUint,
}

/// Fibonacci: `inrC(n) = F_k` for `F_k - 2 < n <= F_{k+1} - 2`, with `F_k = D_k`, `d = 2`.
pub fn fibonacci_inrc_range(k: usize) -> Result<InrcRange> {
    if k == 0 {
        return Err(Error::Domain("Fibonacci ranges start at k = 1".into()));
    }
    let f = DBonacciNumbers::new(2, k + 1)?;
    let two = BigUint::from(2u32);
    Ok(InrcRange {
        low: f.get(k as i64) - &two,
        high: f.get(k as i64 + 1) - &two,
        value: inrc_dbonacci(2, (f.get(k as i64 + 1) - &two).to_u64().expect("small k"))?,
    })
}

/// Tribonacci: `inrC(n) = T_k` for `(T_k + T_{k-2} - 3)/2 < n <= (T_{k+1} + T_{k-1} - 3)/2`,
/// with `T_k = D_k`, `d = 3`.
pub fn tribonacci_inrc_range(k: usize) -> Result<InrcRange> {
    if k == 0 {
        return Err(Error::Domain("Tribonacci ranges start at k = 1".into()));
    }
    let t = DBonacciNumbers::new(3, k + 1)?;
    let k = k as i64;
    let half = |a: &BigUint, b: &BigUint| -> Result<BigUint> {
        let (q, r) = (a + b - BigUint::from(3u32)).div_rem(&BigUint::from(2u32));
        if !r.is_zero() {
            return Err(Error::Internal("Tribonacci range bound is not an integer".into()));
        }
        Ok(q)
    };
    let high = half(t.get(k + 1), t.get(k - 1))?;
    Ok(InrcRange {
        low: half(t.get(k), t.get(k - 2))?,
        value: inrc_dbonacci(3, high.to_u64().expect("small k"))?,
        high,
    })
}

/// Iterates `B(k) = τ(B(k-1))0` on Parikh vectors and returns `|B(k)|`.
pub fn bispecial_length_by_recursion(d: usize, k: usize) -> Result<BigUint> {
    check_order(d)?;
    let tau: IncidenceMatrix = Morphism::dbonacci(d)?.incidence();
    let zero = ParikhVector::unit(d, 0);
    let mut v = ParikhVector::zero(d);
    for _ in 0..k {
        v = tau.apply(&v)?.add(&zero)?;
    }
    Ok(v.total())
}
