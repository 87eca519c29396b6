//! Verification over a prime range split into independent segments.

use std::time::Instant;

use rayon::prelude::*;
use splitrec_core::primes::PrimeIter;
use splitrec_core::verify::{self, Bundle, VerificationReport};

use crate::error::{CliError, CliResult};

/// Tuning knobs; each can also come from a `SPLITREC_*` environment variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tuning {
    /// First lift exponent tried by automorphism discovery.
    pub lift_start: Option<u32>,
    /// Numbers per sieve segment and per parallel work item.
    pub segment_size: usize,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for Tuning {
    fn default() -> Self {
        Tuning { lift_start: None, segment_size: splitrec_core::primes::DEFAULT_SEGMENT, jobs: 0 }
    }
}

fn segments(lo: u64, hi: u64, size: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = lo;
    loop {
        let b = a.saturating_add(size - 1).min(hi);
        out.push((a, b));
        if b == hi {
            return out;
        }
        a = b + 1;
    }
}

fn verify_segment(bundle: &Bundle, lo: u64, hi: u64, segment: usize) -> CliResult<VerificationReport> {
    let mut report = VerificationReport::empty(bundle, lo, hi);
    for p in PrimeIter::with_segment(lo, hi, segment)? {
        report.record(p, verify::verify_prime(bundle, p)?);
    }
    Ok(report)
}

/// Same report as the sequential `verify_range`, computed segment by segment in parallel.
pub fn verify_parallel(bundle: &Bundle, lo: u64, hi: u64, tuning: &Tuning) -> CliResult<VerificationReport> {
    if lo < 2 || hi < lo {
        return Err(splitrec_core::Error::InvalidRange(lo, hi).into());
    }
    if tuning.segment_size == 0 {
        return Err(CliError::Usage("segment size must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(tuning.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", tuning.jobs)))?;
    let start = Instant::now();
    let parts = segments(lo, hi, tuning.segment_size as u64);
    let mut report = pool.install(|| {
        parts
            .par_iter()
            .map(|&(a, b)| verify_segment(bundle, a, b, tuning.segment_size))
            .try_reduce(|| VerificationReport::empty(bundle, lo, hi), |x, y| Ok(x.merge(y)))
    })?;
    report.elapsed = Some(start.elapsed());
    Ok(report)
}
