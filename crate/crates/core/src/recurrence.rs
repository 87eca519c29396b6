//! Rational linear recurrences `a_m + c_1 a_{m-1} + ... + c_d a_{m-d} = 0`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modp::{self, PolyModP};
use crate::modular;
use crate::poly::PolyQ;
use crate::rat::{self, Rat};

/// Primes where reduction mod `p` is not trusted.
///
/// Prime factors that do not fit in a `u64` (or that the factorizer could not
/// split off) are kept in `cofactor`, so membership stays exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrimes {
    primes: Vec<u64>,
    cofactor: BigUint,
}

impl BadPrimes {
    pub fn new(mut primes: Vec<u64>, cofactor: BigUint) -> Self {
        primes.sort_unstable();
        primes.dedup();
        BadPrimes { primes, cofactor }
    }

    /// Prime divisors of `n`.
    pub fn of_integer(n: &BigUint) -> Self {
        let (found, mut cofactor) = modular::factor_integer(n);
        let mut primes = Vec::new();
        for q in found {
            match q.to_u64() {
                Some(v) => primes.push(v),
                None => cofactor *= q,
            }
        }
        BadPrimes::new(primes, cofactor)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `1` unless some bad prime is too large to list or was left unfactored.
    pub fn cofactor(&self) -> &BigUint {
        &self.cofactor
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok() || (!self.cofactor.is_one() && (&self.cofactor % p).is_zero())
    }

    pub fn union(&self, other: &BadPrimes) -> BadPrimes {
        let mut primes = self.primes.clone();
        primes.extend_from_slice(&other.primes);
        BadPrimes::new(primes, num_integer::Integer::lcm(&self.cofactor, &other.cofactor))
    }
}

/// The sequence determined by `char_poly` (monic, degree `d`) and `a_0..a_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    char_poly: PolyQ,
    initial: Vec<Rat>,
    bad: BadPrimes,
    denominators: BigUint,
}

impl Recurrence {
    pub fn new(char_poly: PolyQ, initial: Vec<Rat>) -> Result<Self> {
        let d = match char_poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidRecurrence("characteristic polynomial must have degree >= 1".into())),
        };
        if !char_poly.is_monic() {
            return Err(Error::InvalidRecurrence("characteristic polynomial must be monic".into()));
        }
        if initial.len() != d {
            return Err(Error::InvalidRecurrence(format!("expected {d} initial values, got {}", initial.len())));
        }
        let disc = char_poly.discriminant();
        if disc.is_zero() {
            return Err(Error::InvalidRecurrence("characteristic polynomial has repeated roots".into()));
        }
        let denominators = rat::lcm_denominators(char_poly.coeffs().iter().chain(initial.iter()));
        let mut bad = BadPrimes::of_integer(&(rat::abs_numer(&disc) * disc.denom().to_biguint().unwrap_or_default()));
        bad = bad.union(&BadPrimes::of_integer(&denominators));
        Ok(Recurrence { char_poly, initial, bad, denominators })
    }

    pub fn char_poly(&self) -> &PolyQ {
        &self.char_poly
    }

    pub fn order(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[Rat] {
        &self.initial
    }

    /// Primes dividing a denominator of `char_poly` or `initial`, or the discriminant.
    pub fn bad_primes(&self) -> &BadPrimes {
        &self.bad
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.bad.contains(p)
    }

    /// True if `p` divides a denominator, so the sequence has no reduction mod `p`.
    pub fn is_denominator_prime(&self, p: u64) -> bool {
        (&self.denominators % p).is_zero()
    }

    /// `c_1, ..., c_d` in `a_m = -(c_1 a_{m-1} + ... + c_d a_{m-d})`.
    fn relation(&self) -> Vec<Rat> {
        let d = self.order();
        (1..=d).map(|i| self.char_poly.coeff(d - i)).collect()
    }

    /// Exact `a_0, ..., a_n`.
    pub fn step_sequence(&self, n: usize) -> Vec<Rat> {
        let d = self.order();
        let c = self.relation();
        let mut out: Vec<Rat> = self.initial.iter().take(n + 1).cloned().collect();
        for m in d..=n {
            let mut acc = Rat::zero();
            for (i, ci) in c.iter().enumerate() {
                acc -= ci * &out[m - 1 - i];
            }
            out.push(acc);
        }
        out
    }

    /// `a_p mod p` for a good prime; bad primes are refused.
    pub fn eval_mod_p(&self, p: u64) -> Result<u64> {
        if self.is_bad(p) {
            return Err(Error::BadPrime(p));
        }
        self.residue(p)
    }

    /// `a_p mod p` whenever the sequence reduces mod `p`, including primes that
    /// only divide the discriminant. Such values carry no guarantee.
    pub fn residue(&self, p: u64) -> Result<u64> {
        self.residue_at(p, &BigUint::from(p))
    }

    /// `a_n mod p` by `x^n mod (char_poly, p)`.
    pub fn residue_at(&self, p: u64, n: &BigUint) -> Result<u64> {
        if p < 2 || !modular::is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        if self.is_denominator_prime(p) {
            return Err(Error::DenominatorPrime(p));
        }
        let f = PolyModP::from_poly_q(&self.char_poly, p)?;
        let b = PolyModP::x(p).pow_mod(n, &f)?;
        let init = self.initial_mod(p)?;
        Ok(init.iter().enumerate().fold(0, |acc, (i, &a)| modp::add(acc, modp::mul(b.coeff(i), a, p), p)))
    }

    fn initial_mod(&self, p: u64) -> Result<Vec<u64>> {
        self.initial.iter().map(|a| rat::mod_p(a, p).ok_or(Error::DenominatorPrime(p))).collect()
    }

    /// `a_p mod p` by powering the companion matrix; an independent check on [`eval_mod_p`](Self::eval_mod_p).
    pub fn eval_companion(&self, p: u64) -> Result<u64> {
        if self.is_bad(p) {
            return Err(Error::BadPrime(p));
        }
        let d = self.order();
        let c: Vec<u64> =
            self.relation().iter().map(|ci| rat::mod_p(ci, p).ok_or(Error::DenominatorPrime(p))).collect::<Result<_>>()?;
        // state (a_{m+d-1}, ..., a_m) -> (a_{m+d}, ..., a_{m+1})
        let mut step = vec![vec![0u64; d]; d];
        for (j, cj) in c.iter().enumerate() {
            step[0][j] = modp::neg(*cj, p);
        }
        for i in 1..d {
            step[i][i - 1] = 1;
        }
        let power = mat_pow(&step, p, p);
        let init = self.initial_mod(p)?;
        let state: Vec<u64> = init.iter().rev().copied().collect();
        // a_p is the last coordinate of step^p applied to (a_{d-1}, ..., a_0)
        let row = &power[d - 1];
        Ok(row.iter().zip(&state).fold(0, |acc, (&m, &s)| modp::add(acc, modp::mul(m, s, p), p)))
    }

    /// Smallest period `t` (then least preperiod `s`) visible in `a_0..a_horizon`.
    ///
    /// A window of at least `d` matching terms is required; since both shifted
    /// sequences satisfy the same recurrence, that window forces `a_{m+t} = a_m`
    /// for every `m >= s`. Returns `None` when `horizon < 2d` or nothing is found.
    pub fn detect_period(&self, horizon: usize) -> Option<(usize, usize)> {
        let d = self.order();
        if horizon < 2 * d {
            return None;
        }
        let a = self.step_sequence(horizon);
        for t in 1..=horizon - d {
            let last = horizon - t;
            let mut s = last + 1;
            while s > 0 && a[s - 1 + t] == a[s - 1] {
                s -= 1;
            }
            if last + 1 - s >= d {
                return Some((s, t));
            }
        }
        None
    }
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = modp::add(out[i][j], modp::mul(a[i][k], b[k][j], p), p);
            }
        }
    }
    out
}

fn mat_pow(m: &[Vec<u64>], mut e: u64, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut acc: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, p);
        }
        base = mat_mul(&base, &base, p);
        e >>= 1;
    }
    acc
}
