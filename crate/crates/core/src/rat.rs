//! Exact rational scalars.

use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modp;

/// Arbitrary precision rational in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses `"n"` or `"n/d"` (optional leading sign, no spaces).
pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidPolynomial(alloc::format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn to_string(r: &Rat) -> String {
    r.to_string()
}

/// Residue of `r` modulo the prime `p`, or `None` when `p` divides the denominator.
pub fn mod_p(r: &Rat, p: u64) -> Option<u64> {
    let den = residue(r.denom(), p);
    if den == 0 {
        return None;
    }
    let num = residue(r.numer(), p);
    Some(modp::mul(num, modp::inv(den, p), p))
}

/// `n mod p` in `[0, p)` for a signed big integer.
pub fn residue(n: &BigInt, p: u64) -> u64 {
    let m = (n.magnitude() % p).to_u64().unwrap_or(0);
    if n.sign() == Sign::Minus && m != 0 {
        p - m
    } else {
        m
    }
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigUint {
    let mut acc = BigUint::one();
    for v in values {
        acc = acc.lcm(v.denom().magnitude());
    }
    acc
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs_numer(r: &Rat) -> BigUint {
    r.numer().abs().magnitude().clone()
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}
