//! Segmented sieve of Eratosthenes.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT: usize = 1 << 16;
pub const MAX_SIEVE_BOUND: u64 = 1 << 32;

/// All primes `<= bound` with a plain sieve.
pub fn small_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Ascending primes in `[lo, hi]`, sieved one segment at a time.
#[derive(Debug, Clone)]
pub struct PrimeIter {
    base: Vec<u64>,
    hi: u64,
    seg_lo: u64,
    seg_len: usize,
    segment: Vec<bool>,
    pos: usize,
    done: bool,
}

impl PrimeIter {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        Self::with_segment(lo, hi, DEFAULT_SEGMENT)
    }

    pub fn with_segment(lo: u64, hi: u64, segment: usize) -> Result<Self> {
        if lo < 2 || hi < lo {
            return Err(Error::InvalidRange(lo, hi));
        }
        if hi > MAX_SIEVE_BOUND {
            return Err(Error::RangeTooLarge(hi));
        }
        let root = integer_sqrt(hi);
        let mut it = PrimeIter {
            base: small_primes(root),
            hi,
            seg_lo: lo,
            seg_len: segment.max(64),
            segment: Vec::new(),
            pos: 0,
            done: false,
        };
        it.fill();
        Ok(it)
    }

    fn fill(&mut self) {
        let lo = self.seg_lo;
        let end = (lo + self.seg_len as u64 - 1).min(self.hi);
        let len = (end - lo + 1) as usize;
        self.segment.clear();
        self.segment.resize(len, true);
        for &q in &self.base {
            if q * q > end {
                break;
            }
            let mut start = (q * q).max(lo.div_ceil(q) * q);
            while start <= end {
                self.segment[(start - lo) as usize] = false;
                start += q;
            }
        }
        if lo < 2 {
            for v in lo..2.min(end + 1) {
                self.segment[(v - lo) as usize] = false;
            }
        }
        self.pos = 0;
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.done {
                return None;
            }
            while self.pos < self.segment.len() {
                let i = self.pos;
                self.pos += 1;
                if self.segment[i] {
                    return Some(self.seg_lo + i as u64);
                }
            }
            let next_lo = self.seg_lo + self.segment.len() as u64;
            if next_lo > self.hi || self.segment.is_empty() {
                self.done = true;
                return None;
            }
            self.seg_lo = next_lo;
            self.fill();
        }
    }
}

/// Shorthand for [`PrimeIter::new`].
pub fn prime_iter(lo: u64, hi: u64) -> Result<PrimeIter> {
    PrimeIter::new(lo, hi)
}

pub fn integer_sqrt(n: u64) -> u64 {
    num_integer::Roots::sqrt(&n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        assert_eq!(prime_iter(2, 10).unwrap().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(prime_iter(90, 100).unwrap().collect::<Vec<_>>(), vec![97]);
        assert_eq!(prime_iter(2, 2).unwrap().collect::<Vec<_>>(), vec![2]);
        assert_eq!(prime_iter(24, 28).unwrap().count(), 0);
    }

    #[test]
    fn counts_match_plain_sieve() {
        assert_eq!(prime_iter(2, 10_000).unwrap().count(), 1229);
        let plain = small_primes(200_000);
        let seg: Vec<u64> = PrimeIter::with_segment(2, 200_000, 1000).unwrap().collect();
        assert_eq!(seg, plain);
        let window: Vec<u64> = PrimeIter::with_segment(150_000, 150_500, 97).unwrap().collect();
        let expect: Vec<u64> = plain.iter().copied().filter(|&p| (150_000..=150_500).contains(&p)).collect();
        assert_eq!(window, expect);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert_eq!(prime_iter(1, 10).unwrap_err(), Error::InvalidRange(1, 10));
        assert_eq!(prime_iter(10, 5).unwrap_err(), Error::InvalidRange(10, 5));
        assert_eq!(prime_iter(2, 1 << 33).unwrap_err(), Error::RangeTooLarge(1 << 33));
    }
}
