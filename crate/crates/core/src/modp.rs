//! Arithmetic in `F_p` and `F_p[x]` for word-sized primes.
//!
//! Residues are `u64` values in `[0, p)`; products go through `u128`, so any
//! prime below `2^63` is supported.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::rat;

pub const MAX_PRIME: u64 = 1 << 63;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`; `a` must be a unit.
pub fn inv(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} is not invertible mod {m}");
    t0.rem_euclid(m as i128) as u64
}

/// Polynomial over `F_p`, coefficients lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(p >= 2 && p < MAX_PRIME, "modulus {p} out of range");
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PolyModP::new(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        PolyModP::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        PolyModP::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        PolyModP::new(p, vec![c])
    }

    /// Reduces a rational polynomial; fails if `p` divides a denominator.
    pub fn from_poly_q(f: &PolyQ, p: u64) -> Result<Self> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| rat::mod_p(c, p).ok_or(Error::DenominatorPrime(p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyModP::new(p, coeffs))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv(lc, self.p)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        PolyModP::new(p, self.coeffs.iter().map(|&a| mul(a, c, p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyModP::new(p, (0..n).map(|i| add(self.coeff(i), other.coeff(i), p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyModP::new(p, (0..n).map(|i| sub(self.coeff(i), other.coeff(i), p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return PolyModP::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        PolyModP::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, divisor.p);
        let p = self.p;
        let dd = divisor.degree().expect("polynomial division by zero");
        if self.coeffs.len() <= dd {
            return (PolyModP::zero(p), self.clone());
        }
        let lc_inv = inv(divisor.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = mul(rem[i], lc_inv, p);
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = sub(rem[i - dd + j], mul(q, c, p), p);
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (PolyModP::new(p, quot), PolyModP::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    fn check_modulus(&self, modulus: &Self) -> Result<()> {
        if modulus.p != self.p {
            return Err(Error::PrimeMismatch(self.p, modulus.p));
        }
        match modulus.degree() {
            Some(d) if d >= 1 && modulus.is_monic() => Ok(()),
            _ => Err(Error::NonMonicModulus),
        }
    }

    /// `self^e mod modulus` by left-to-right square and multiply.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Result<Self> {
        self.check_modulus(modulus)?;
        let base = self.rem(modulus);
        let mut acc = PolyModP::one(self.p).rem(modulus);
        if e.is_zero() {
            return Ok(acc);
        }
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, e: u64, modulus: &Self) -> Result<Self> {
        self.pow_mod(&BigUint::from(e), modulus)
    }

    /// `self(inner) mod modulus`.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Self {
        let p = self.p;
        let mut acc = PolyModP::zero(p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_mod(inner, modulus).add(&PolyModP::constant(p, c));
        }
        acc.rem(modulus)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        PolyModP::new(
            p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul(c, i as u64 % p, p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
    }

    /// For `self = g(x^p)` returns `g` (Frobenius is the identity on `F_p`).
    pub fn pth_root(&self) -> Self {
        let p = self.p as usize;
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0));
        PolyModP::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}
