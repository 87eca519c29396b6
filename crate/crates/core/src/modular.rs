//! Modular toolbox over big integers: CRT, Hensel lifting, rational
//! reconstruction, residue symbols, primality and integer factorization.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::rat::Rat;

/// Recovers `a/b` with `a * b^-1 = residue (mod m)` and `|a|, b <= floor(sqrt(m/2))`.
///
/// Uses the half-extended Euclidean algorithm. `None` means no such fraction
/// exists, which callers treat as "lift further and retry".
pub fn rational_reconstruct(residue: &BigInt, m: &BigInt) -> Option<Rat> {
    if !m.is_positive() {
        return None;
    }
    let bound: BigInt = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), residue.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r);
        t0 = core::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(m).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Combines `x = r_i (mod m_i)` for pairwise coprime moduli into `(x, prod m_i)`.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        let inv = inv_mod(&modulus, m).ok_or(Error::NonCoprimeModuli)?;
        let delta = ((r - &x) * inv).mod_floor(m);
        x += &modulus * delta;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok((x, modulus))
}

fn integer_coeffs(f: &PolyQ) -> Result<Vec<BigInt>> {
    if !f.is_integral() {
        return Err(Error::InvalidPolynomial("expected integer coefficients".into()));
    }
    Ok(f.coeffs().iter().map(|c| c.numer().clone()).collect())
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Lifts a simple root `r` of `f` modulo `p` to a root modulo `p^k` (quadratic Newton).
pub fn hensel_lift_root(f: &PolyQ, r: u64, p: u64, k: u32) -> Result<BigInt> {
    let coeffs = integer_coeffs(f)?;
    let deriv = integer_coeffs(&f.derivative())?;
    let p_big = BigInt::from(p);
    let r = BigInt::from(r % p);
    if !eval_mod(&coeffs, &r, &p_big).is_zero() {
        return Err(Error::NotARoot(p));
    }
    if eval_mod(&deriv, &r, &p_big).is_zero() {
        return Err(Error::SingularRoot(p));
    }
    let mut cur = r;
    let mut prec = 1u32;
    while prec < k {
        prec = (prec * 2).min(k);
        let m = num_traits::pow(p_big.clone(), prec as usize);
        let fd = eval_mod(&deriv, &cur, &m);
        let inv = inv_mod(&fd, &m).ok_or(Error::SingularRoot(p))?;
        let fv = eval_mod(&coeffs, &cur, &m);
        cur = (&cur - fv * inv).mod_floor(&m);
    }
    Ok(cur)
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)` for `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i8 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1i8;
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => sign = -sign,
            _ => return 0,
        }
    }
    if n == 1 {
        return sign;
    }
    sign * jacobi(a, n)
}

fn mr_witness_u64(n: u64, a: u64) -> bool {
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mut x = crate::modp::pow(a, d, n);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..s {
        x = crate::modp::mul(x, x, n);
        if x == n - 1 {
            return false;
        }
    }
    true
}

const SMALL_PRIMES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &SMALL_PRIMES[..12] {
        if n % q == 0 {
            return n == q;
        }
    }
    SMALL_PRIMES[..12].iter().all(|&a| !mr_witness_u64(n, a))
}

/// Miller-Rabin; exact below 2^64, probabilistic with 20 fixed bases above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &q in &SMALL_PRIMES {
        if (n % q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64, max_iter: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |x: &BigUint| (x * x + &c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let batch = 64u64;
    let mut iters = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += batch;
            iters += batch;
        }
        r *= 2;
        if iters > max_iter {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Distinct prime divisors of `n` (ascending) and the part left unfactored.
///
/// Trial division removes factors below 2^16; Pollard-Brent rho splits the
/// rest. A composite that survives the iteration budget is returned in the
/// cofactor, which is `1` when the factorization is complete.
pub fn factor_integer(n: &BigUint) -> (Vec<BigUint>, BigUint) {
    let mut primes = BTreeSet::new();
    let mut cofactor = BigUint::one();
    if n.is_zero() {
        return (Vec::new(), BigUint::zero());
    }
    let mut rest = n.clone();
    for q in crate::primes::small_primes(1 << 16) {
        if rest.is_one() {
            break;
        }
        if (&rest % q).is_zero() {
            primes.insert(BigUint::from(q));
            while (&rest % q).is_zero() {
                rest /= q;
            }
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            primes.insert(m);
            continue;
        }
        if let Some(r) = perfect_square_root(&m) {
            stack.push(r);
            continue;
        }
        let split = (1..=8u64).find_map(|c| pollard_brent(&m, c, 1 << 22));
        match split {
            Some(d) => {
                let e = &m / &d;
                stack.push(d);
                stack.push(e);
            }
            None => cofactor *= m,
        }
    }
    (primes.into_iter().collect(), cofactor)
}

fn perfect_square_root(m: &BigUint) -> Option<BigUint> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

/// Symmetric representative of `x mod m` in `(-m/2, m/2]`.
pub fn symmetric_residue(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

pub fn bigint_from_biguint(n: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n)
}
