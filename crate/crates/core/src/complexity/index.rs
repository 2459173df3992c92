//! Exact factor numbering for the oracle sweeps.
//!
//! Every length-`n` window gets a 128-bit fingerprint from two polynomial
//! hashes modulo `2^61 - 1`. A fingerprint hit is always confirmed by
//! comparing symbols against the bucket's representatives, so collisions
//! only cost time.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

const MOD: u64 = (1 << 61) - 1;
const BASE_A: u64 = 0x1f3d_5b79_a4c2_e3d1 % MOD;
const BASE_B: u64 = 0x2b99_2ddf_a232_49d6 % MOD;
const NONE: usize = usize::MAX;

fn mul_mod(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let t = (t >> 61) + (t & MOD as u128);
    reduce(t as u64)
}

fn reduce(x: u64) -> u64 {
    let x = (x >> 61) + (x & MOD);
    if x >= MOD {
        x - MOD
    } else {
        x
    }
}

fn pow_mod(mut base: u64, mut exp: usize) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Fingerprints are already uniformly mixed; hash them by truncation.
#[derive(Default)]
struct Passthrough(u64);

impl Hasher for Passthrough {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ b as u64;
        }
    }

    fn write_u128(&mut self, v: u128) {
        self.0 = (v as u64) ^ ((v >> 64) as u64).rotate_left(29);
    }
}

type FingerprintMap<V> = HashMap<u128, V, BuildHasherDefault<Passthrough>>;

struct Rolling {
    base: u64,
    top: u64,
    value: u64,
}

impl Rolling {
    fn new(base: u64, window: &[u8]) -> Self {
        let top = pow_mod(base, window.len() - 1);
        let value = window
            .iter()
            .fold(0, |h, &s| reduce(mul_mod(h, base) + s as u64 + 1));
        Rolling { base, top, value }
    }

    fn roll(&mut self, out: u8, inp: u8) {
        let drop = mul_mod(out as u64 + 1, self.top);
        let v = reduce(self.value + MOD - drop);
        self.value = reduce(mul_mod(v, self.base) + inp as u64 + 1);
    }
}

/// `f_n(p)` for every position, numbered by first occurrence.
pub(crate) struct FactorIndex<'a> {
    buffer: &'a [u8],
    n: usize,
    ids: Vec<u32>,
    reps: Vec<usize>,
    left_mask: Vec<u64>,
    right_mask: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct WindowScan {
    pub m: usize,
    pub h: usize,
    pub endpoints_special: bool,
}

impl<'a> FactorIndex<'a> {
    /// Requires `1 <= n <= buffer.len()`.
    pub fn build(buffer: &'a [u8], n: usize) -> Self {
        assert!(n >= 1 && n <= buffer.len());
        let positions = buffer.len() - n + 1;
        let mut ids = Vec::with_capacity(positions);
        let mut reps: Vec<usize> = Vec::new();
        let mut buckets: FingerprintMap<Vec<u32>> = FingerprintMap::default();
        let mut ha = Rolling::new(BASE_A, &buffer[..n]);
        let mut hb = Rolling::new(BASE_B, &buffer[..n]);
        for p in 0..positions {
            if p > 0 {
                ha.roll(buffer[p - 1], buffer[p + n - 1]);
                hb.roll(buffer[p - 1], buffer[p + n - 1]);
            }
            let fp = (ha.value as u128) << 64 | hb.value as u128;
            let window = &buffer[p..p + n];
            let bucket = buckets.entry(fp).or_default();
            let id = match bucket.iter().find(|&&id| &buffer[reps[id as usize]..][..n] == window) {
                Some(&id) => id,
                None => {
                    let id = reps.len() as u32;
                    reps.push(p);
                    bucket.push(id);
                    id
                }
            };
            ids.push(id);
        }
        let mut left_mask = vec![0u64; reps.len()];
        let mut right_mask = vec![0u64; reps.len()];
        for (p, &id) in ids.iter().enumerate() {
            if p > 0 {
                left_mask[id as usize] |= 1 << buffer[p - 1];
            }
            if p + n < buffer.len() {
                right_mask[id as usize] |= 1 << buffer[p + n];
            }
        }
        FactorIndex { buffer, n, ids, reps, left_mask, right_mask }
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn factor(&self, p: usize) -> &'a [u8] {
        &self.buffer[p..p + self.n]
    }

    pub fn is_left_special(&self, id: u32) -> bool {
        self.left_mask[id as usize].count_ones() >= 2
    }

    pub fn is_right_special(&self, id: u32) -> bool {
        self.right_mask[id as usize].count_ones() >= 2
    }

    /// Longest run of pairwise distinct consecutive factors. The reported
    /// start is the smallest one whose neighbours are a right special factor
    /// (before) and a left special factor (after), both repeated inside the
    /// window; failing that, the smallest start of any longest run.
    pub fn longest_distinct_window(&self) -> WindowScan {
        let positions = self.ids.len();
        let mut last = vec![NONE; self.count()];
        let mut lower = vec![0usize; positions];
        let mut lo = 0;
        let mut m = 0;
        for (p, &id) in self.ids.iter().enumerate() {
            let prev = last[id as usize];
            if prev != NONE && prev >= lo {
                lo = prev + 1;
            }
            lower[p] = lo;
            m = m.max(p + 1 - lo);
            last[id as usize] = p;
        }
        let mut first = None;
        for (end, &low) in lower.iter().enumerate().skip(m - 1) {
            let h = end + 1 - m;
            if low > h {
                continue;
            }
            first.get_or_insert(h);
            if self.endpoints_special(h, m) {
                return WindowScan { m, h, endpoints_special: true };
            }
        }
        WindowScan { m, h: first.expect("a longest window exists"), endpoints_special: false }
    }

    fn endpoints_special(&self, h: usize, m: usize) -> bool {
        if h == 0 || h + m >= self.ids.len() {
            return false;
        }
        let before = self.ids[h - 1];
        let after = self.ids[h + m];
        let window = &self.ids[h..h + m];
        self.is_right_special(before)
            && self.is_left_special(after)
            && window.contains(&before)
            && window.contains(&after)
    }

    /// Position of the first repeated factor, if any repeat occurs.
    pub fn first_repeat(&self) -> Option<usize> {
        let mut seen = vec![false; self.count()];
        for (p, &id) in self.ids.iter().enumerate() {
            if std::mem::replace(&mut seen[id as usize], true) {
                return Some(p);
            }
        }
        None
    }

    /// Longest gap between consecutive occurrences of the same factor, or
    /// `None` when some factor occurs only once.
    pub fn longest_return(&self) -> Option<usize> {
        let mut last = vec![NONE; self.count()];
        let mut repeated = vec![false; self.count()];
        let mut gap = 0;
        for (p, &id) in self.ids.iter().enumerate() {
            let prev = last[id as usize];
            if prev != NONE {
                gap = gap.max(p - prev);
                repeated[id as usize] = true;
            }
            last[id as usize] = p;
        }
        repeated.iter().all(|&r| r).then_some(gap)
    }

    /// Smallest `m` such that every length-`m` window of the buffer contains
    /// every factor of the index.
    pub fn shortest_covering_window(&self) -> usize {
        let positions = self.ids.len();
        let total = self.count();
        let covers = |span: usize| -> bool {
            let mut counts = vec![0u32; total];
            let mut present = 0;
            for p in 0..positions {
                let id = self.ids[p] as usize;
                if counts[id] == 0 {
                    present += 1;
                }
                counts[id] += 1;
                if p >= span {
                    let out = self.ids[p - span] as usize;
                    counts[out] -= 1;
                    if counts[out] == 0 {
                        present -= 1;
                    }
                }
                if p + 1 >= span && present < total {
                    return false;
                }
            }
            true
        };
        let (mut lo, mut hi) = (total.max(1), positions);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if covers(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo + self.n - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute force: maximal run of distinct windows by checking all starts.
    fn naive_nrc(buf: &[u8], n: usize) -> usize {
        let positions = buf.len() - n + 1;
        let mut best = 0;
        for start in 0..positions {
            let mut seen = HashSet::new();
            let mut len = 0;
            for p in start..positions {
                if !seen.insert(&buf[p..p + n]) {
                    break;
                }
                len += 1;
            }
            best = best.max(len);
        }
        best
    }

    #[test]
    fn ids_match_exact_equality() {
        let buf: Vec<u8> = (0..500u32).map(|i| ((i * i + 7 * i) % 3) as u8).collect();
        for n in [1, 2, 5, 17] {
            let idx = FactorIndex::build(&buf, n);
            for p in 0..idx.ids.len() {
                for q in 0..idx.ids.len() {
                    assert_eq!(idx.ids[p] == idx.ids[q], buf[p..p + n] == buf[q..q + n]);
                }
            }
        }
    }

    #[test]
    fn window_sweep_matches_naive() {
        let buf: Vec<u8> = (0..300u32).map(|i| ((i * 31 + i / 7) % 4) as u8).collect();
        for n in 1..8 {
            assert_eq!(FactorIndex::build(&buf, n).longest_distinct_window().m, naive_nrc(&buf, n));
        }
    }

    #[test]
    fn first_repeat_and_returns() {
        let buf = [0u8, 1, 0, 0, 1, 0, 1, 0, 0, 1];
        let idx = FactorIndex::build(&buf, 1);
        assert_eq!(idx.first_repeat(), Some(2));
        // Returns to `1`: positions 1, 4, 6, 9 -> longest gap 3.
        assert_eq!(idx.longest_return(), Some(3));
        assert_eq!(idx.shortest_covering_window(), 3);
    }
}
