//! Recurrence predictions checked against the Frobenius oracle.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::galois::{self, GaloisGroup};
use crate::idempotent::{self, IdempotentTarget};
use crate::number_field::FieldElement;
use crate::primes;
use crate::rat::Rat;
use crate::recurrence::Recurrence;
use crate::splitting;

/// A recurrence together with the set of group elements it should detect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetRecurrence {
    pub target: IdempotentTarget,
    /// Sorted element indices.
    pub members: Vec<usize>,
    pub recurrence: Recurrence,
}

/// Field, group, normal element and recurrences: everything verification needs.
#[derive(Clone, Debug)]
pub struct Bundle {
    group: GaloisGroup,
    alpha: FieldElement,
    recurrences: Vec<TargetRecurrence>,
}

impl Bundle {
    /// Checks that each recurrence belongs to `alpha` and each target is valid.
    pub fn new(group: GaloisGroup, alpha: FieldElement, recurrences: Vec<(IdempotentTarget, Recurrence)>) -> Result<Self> {
        if alpha.field() != group.field() {
            return Err(Error::FieldMismatch);
        }
        if !galois::is_normal_element(&group, &alpha) {
            return Err(Error::InconsistentBundle("stored element is not normal".into()));
        }
        let min_poly = alpha.min_poly();
        let recurrences = recurrences
            .into_iter()
            .map(|(target, recurrence)| {
                if *recurrence.char_poly() != min_poly {
                    return Err(Error::InconsistentBundle(format!(
                        "recurrence has characteristic polynomial {} but the normal element has {}",
                        recurrence.char_poly(),
                        min_poly
                    )));
                }
                let members = target.members(&group)?;
                Ok(TargetRecurrence { target, members, recurrence })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Bundle { group, alpha, recurrences })
    }

    /// Solves one recurrence per conjugacy class.
    pub fn for_all_classes(group: GaloisGroup, alpha: FieldElement) -> Result<Self> {
        let recs = idempotent::solve_all_classes(&group, &alpha)?;
        let targets = group.classes().iter().map(|c| IdempotentTarget::Class(c.representative));
        let pairs = targets.zip(recs).collect();
        Bundle::new(group, alpha, pairs)
    }

    pub fn group(&self) -> &GaloisGroup {
        &self.group
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn recurrences(&self) -> &[TargetRecurrence] {
        &self.recurrences
    }

    /// Index of the recurrence for the class of element `i`, if present.
    pub fn class_recurrence(&self, i: usize) -> Option<&TargetRecurrence> {
        let members = &self.group.classes()[self.group.class_of(i)].members;
        self.recurrences.iter().find(|t| matches!(t.target, IdempotentTarget::Class(_)) && t.members == *members)
    }

    /// True if the bundle covers every class exactly once with a class target.
    pub fn has_all_classes(&self) -> bool {
        self.group.classes().iter().all(|c| {
            self.recurrences
                .iter()
                .filter(|t| matches!(t.target, IdempotentTarget::Class(_)) && t.members == c.members)
                .count()
                == 1
        })
    }

    /// Primes the oracle cannot handle: divisors of `disc(f)` or of automorphism denominators.
    pub fn field_bad(&self, p: u64) -> bool {
        (self.group.field().discriminant() % BigInt::from(p)).is_zero() || self.group.is_bad_prime(p)
    }

    /// Bad for the oracle or for any recurrence.
    pub fn is_bad(&self, p: u64) -> bool {
        self.field_bad(p) || self.recurrences.iter().any(|t| t.recurrence.is_bad(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mismatch {
    pub prime: u64,
    /// Index into the bundle's recurrences.
    pub recurrence: usize,
    pub predicted: u64,
    pub actual: u64,
}

/// Outcome at a single prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeOutcome {
    Skipped,
    Tested { frobenius: usize, class: usize, mismatches: Vec<Mismatch> },
}

pub fn verify_prime(bundle: &Bundle, p: u64) -> Result<PrimeOutcome> {
    if bundle.is_bad(p) {
        return Ok(PrimeOutcome::Skipped);
    }
    let frob = splitting::frobenius_element(&bundle.group, p)?;
    let mut mismatches = Vec::new();
    for (i, t) in bundle.recurrences.iter().enumerate() {
        let predicted = t.recurrence.eval_mod_p(p)?;
        let actual = u64::from(t.members.binary_search(&frob).is_ok());
        if predicted != actual {
            mismatches.push(Mismatch { prime: p, recurrence: i, predicted, actual });
        }
    }
    Ok(PrimeOutcome::Tested { frobenius: frob, class: bundle.group.class_of(frob), mismatches })
}

/// Statistics over a prime range. Merging is associative and commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub p_min: u64,
    pub p_max: u64,
    pub primes_tested: u64,
    /// Ascending.
    pub skipped_bad: Vec<u64>,
    /// Sorted by prime.
    pub mismatches: Vec<Mismatch>,
    /// Per conjugacy class, in group order.
    pub class_counts: Vec<u64>,
    pub class_sizes: Vec<usize>,
    pub group_order: usize,
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn empty(bundle: &Bundle, p_min: u64, p_max: u64) -> Self {
        let classes = bundle.group.classes();
        VerificationReport {
            p_min,
            p_max,
            primes_tested: 0,
            skipped_bad: Vec::new(),
            mismatches: Vec::new(),
            class_counts: vec![0; classes.len()],
            class_sizes: classes.iter().map(|c| c.size()).collect(),
            group_order: bundle.group.order(),
            elapsed: None,
        }
    }

    pub fn record(&mut self, p: u64, outcome: PrimeOutcome) {
        match outcome {
            PrimeOutcome::Skipped => self.skipped_bad.push(p),
            PrimeOutcome::Tested { class, mismatches, .. } => {
                self.primes_tested += 1;
                self.class_counts[class] += 1;
                self.mismatches.extend(mismatches);
            }
        }
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.p_min = self.p_min.min(other.p_min);
        self.p_max = self.p_max.max(other.p_max);
        self.primes_tested += other.primes_tested;
        self.skipped_bad.extend(other.skipped_bad);
        self.skipped_bad.sort_unstable();
        self.mismatches.extend(other.mismatches);
        self.mismatches.sort();
        for (a, b) in self.class_counts.iter_mut().zip(other.class_counts) {
            *a += b;
        }
        self.elapsed = match (self.elapsed, other.elapsed) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// `(observed count, expected density #[rho]/#G)` per class.
    pub fn class_frequencies(&self) -> Vec<(u64, Rat)> {
        self.class_counts
            .iter()
            .zip(&self.class_sizes)
            .map(|(&n, &s)| (n, Rat::new(BigInt::from(s), BigInt::from(self.group_order))))
            .collect()
    }

    /// Per class: is `|n/N - q| <= 3 sqrt(q(1-q)/N)`? `None` below 1000 tested primes.
    pub fn density_within_three_sigma(&self) -> Option<Vec<bool>> {
        let n = self.primes_tested;
        if n < 1000 {
            return None;
        }
        let big_n = Rat::from_integer(BigInt::from(n));
        Some(
            self.class_frequencies()
                .into_iter()
                .map(|(count, q)| {
                    let dev = Rat::from_integer(BigInt::from(count)) / &big_n - &q;
                    let var = &q * (Rat::from_integer(BigInt::from(1)) - &q) / &big_n;
                    &dev * &dev <= var * Rat::from_integer(BigInt::from(9))
                })
                .collect(),
        )
    }
}

/// Sequential verification over `[p_min, p_max]`.
pub fn verify_range(bundle: &Bundle, p_min: u64, p_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::empty(bundle, p_min, p_max);
    for p in primes::prime_iter(p_min, p_max)? {
        report.record(p, verify_prime(bundle, p)?);
    }
    Ok(report)
}

/// Violations of the idempotent laws at `p` among the class recurrences:
/// the values must sum to 1, be 0 or 1, and multiply pairwise to 0.
pub fn idempotent_law_violations(values: &[u64], p: u64) -> Vec<&'static str> {
    let mut out = Vec::new();
    let sum = values.iter().fold(0u64, |acc, &v| crate::modp::add(acc, v % p, p));
    if sum != 1 % p {
        out.push("sum");
    }
    if values.iter().any(|&v| crate::modp::mul(v, v, p) != v % p) {
        out.push("square");
    }
    for (i, &a) in values.iter().enumerate() {
        if values[i + 1..].iter().any(|&b| crate::modp::mul(a, b, p) != 0) {
            out.push("product");
            break;
        }
    }
    out
}

/// Class recurrence residues at `p` in class order, or `None` if any is bad.
pub fn class_values(bundle: &Bundle, p: u64) -> Option<Vec<u64>> {
    bundle
        .group
        .classes()
        .iter()
        .map(|c| bundle.class_recurrence(c.representative).and_then(|t| t.recurrence.eval_mod_p(p).ok()))
        .collect()
}
