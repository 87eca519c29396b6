//! Factorization patterns of `f mod p` and Frobenius elements.
//!
//! Everything here works from the defining polynomial and the explicit
//! automorphisms only; it never looks at a recurrence.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::galois::GaloisGroup;
use crate::modp::PolyModP;
use crate::poly::PolyQ;
use crate::rat;

/// Below this prime, equal-degree splitting enumerates candidate factors.
pub const EXHAUSTIVE_BELOW: u64 = 17;

/// `(degree, multiplicity)` of each irreducible factor of `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPattern {
    pub prime: u64,
    /// Sorted ascending.
    pub factors: Vec<(usize, usize)>,
}

impl FactorPattern {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&(d, m)| d * m).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    pub fn is_fully_split(&self) -> bool {
        self.factors.iter().all(|&(d, m)| d == 1 && m == 1)
    }

    /// Common factor degree if every factor is simple and of the same degree.
    pub fn uniform_degree(&self) -> Option<usize> {
        let first = self.factors.first()?.0;
        (self.is_squarefree() && self.factors.iter().all(|&(d, _)| d == first)).then_some(first)
    }
}

/// Complete factorization of a monic polynomial mod `p`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub pattern: FactorPattern,
    /// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
    pub factors: Vec<(PolyModP, usize)>,
}

impl Factorization {
    /// An irreducible factor of least degree.
    pub fn min_factor(&self) -> &PolyModP {
        &self.factors[0].0
    }
}

pub fn factor_mod_p(f: &PolyQ, p: u64) -> Result<Factorization> {
    let fp = PolyModP::from_poly_q(f, p)?;
    if fp.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidPolynomial(alloc::format!("degree drops to 0 mod {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(p, &fp));
    let mut factors: Vec<(PolyModP, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&fp.monic()) {
        for (block, k) in distinct_degree(&part) {
            for g in equal_degree(&block, k, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1)));
    let mut pattern: Vec<(usize, usize)> = factors.iter().map(|(g, m)| (g.degree().unwrap_or(0), *m)).collect();
    pattern.sort_unstable();
    Ok(Factorization { pattern: FactorPattern { prime: p, factors: pattern }, factors })
}

fn seed_for(p: u64, f: &PolyModP) -> u64 {
    // FNV-1a over the prime and the reduced coefficients
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in core::iter::once(p).chain(f.coeffs().iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// `f = prod g_i^i` with squarefree, pairwise coprime `g_i` (monic input).
fn squarefree_decomposition(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let mut out = Vec::new();
    squarefree_into(f, 1, &mut out);
    out
}

fn squarefree_into(f: &PolyModP, scale: usize, out: &mut Vec<(PolyModP, usize)>) {
    let p = f.prime();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i * scale));
        }
        c = c.div_rem(&y).0;
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        squarefree_into(&c.pth_root().monic(), scale * p as usize, out);
    }
}

/// Splits a squarefree monic polynomial into products of same-degree irreducibles.
fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.prime();
    let x = PolyModP::x(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        if 2 * k > deg {
            out.push((rest.clone(), deg));
            break;
        }
        h = h.pow_mod_u64(p, &rest).expect("monic modulus");
        let g = h.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, k));
        }
        k += 1;
    }
    out
}

/// Irreducible factors of `f`, known to be a product of degree-`k` irreducibles.
fn equal_degree(f: &PolyModP, k: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    let n = f.degree().unwrap_or(0);
    if n == k {
        return vec![f.clone()];
    }
    let p = f.prime();
    if p < EXHAUSTIVE_BELOW {
        return exhaustive_split(f, k);
    }
    let exponent = (BigUint::from(p).pow(k as u32) - 1u32) >> 1;
    loop {
        let a = PolyModP::new(p, (0..n).map(|_| rng.next_u64() % p).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.degree().unwrap_or(0) == 0 {
            let b = a.pow_mod(&exponent, f).expect("monic modulus").sub(&PolyModP::one(p));
            g = b.gcd(f);
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, k, rng);
            out.extend(equal_degree(&h, k, rng));
            return out;
        }
    }
}

/// Tries every monic degree-`k` polynomial as a divisor (tiny primes only).
fn exhaustive_split(f: &PolyModP, k: usize) -> Vec<PolyModP> {
    let p = f.prime();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let total = p.pow(k as u32);
    let mut idx = 0;
    while rest.degree().unwrap_or(0) > k && idx < total {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut v = idx;
        for _ in 0..k {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        let cand = PolyModP::new(p, coeffs);
        let (q, r) = rest.div_rem(&cand);
        if r.is_zero() {
            out.push(cand);
            rest = q;
        } else {
            idx += 1;
        }
    }
    out.push(rest);
    out
}

/// True iff `f` has `deg f` distinct roots mod `p`; bad or ramified primes are errors.
pub fn splits_completely(f: &PolyQ, p: u64) -> Result<bool> {
    let fp = PolyModP::from_poly_q(f, p).map_err(|_| Error::RamifiedOrBad(p))?;
    let d = f.degree().unwrap_or(0);
    if fp.degree() != Some(d) || fp.gcd(&fp.derivative()).degree() != Some(0) {
        return Err(Error::RamifiedOrBad(p));
    }
    let fp = fp.monic();
    let x = PolyModP::x(p);
    let xp = x.pow_mod_u64(p, &fp)?;
    Ok(xp.sub(&x).gcd(&fp).degree() == Some(d))
}

/// Index of the group element acting as `x -> x^p` on `F_p[x]/(g)`.
pub fn frobenius_element_with_factor(group: &GaloisGroup, g: &PolyModP) -> Result<usize> {
    let p = g.prime();
    let xp = PolyModP::x(p).pow_mod_u64(p, g)?;
    let mut found = None;
    for (i, sigma) in group.elements().iter().enumerate() {
        let image = PolyModP::from_poly_q(&sigma.image().to_poly(), p).map_err(|_| Error::RamifiedOrBad(p))?;
        if image.rem(g) == xp {
            if found.is_some() {
                return Err(Error::RamifiedOrBad(p));
            }
            found = Some(i);
        }
    }
    found.ok_or(Error::NoFrobeniusMatch(p))
}

fn unramified_factorization(group: &GaloisGroup, p: u64) -> Result<Factorization> {
    let field = group.field();
    if (field.discriminant() % p).is_zero() || group.is_bad_prime(p) {
        return Err(Error::RamifiedOrBad(p));
    }
    let fac = factor_mod_p(field.defining_poly(), p)?;
    if !fac.pattern.is_squarefree() {
        return Err(Error::RamifiedOrBad(p));
    }
    Ok(fac)
}

/// A Frobenius element at `p`, computed from a least-degree factor.
pub fn frobenius_element(group: &GaloisGroup, p: u64) -> Result<usize> {
    let fac = unramified_factorization(group, p)?;
    frobenius_element_with_factor(group, fac.min_factor())
}

/// Frobenius elements for every irreducible factor (one per prime above `p`).
pub fn frobenius_elements_all_factors(group: &GaloisGroup, p: u64) -> Result<Vec<usize>> {
    let fac = unramified_factorization(group, p)?;
    fac.factors.iter().map(|(g, _)| frobenius_element_with_factor(group, g)).collect()
}

/// Conjugacy class index (into `group.classes()`) of Frobenius at `p`.
pub fn frobenius_class(group: &GaloisGroup, p: u64) -> Result<usize> {
    Ok(group.class_of(frobenius_element(group, p)?))
}

/// Roots of a fully split monic `f` mod `p`, ascending.
pub fn roots_mod_p(f: &PolyQ, p: u64) -> Result<Vec<u64>> {
    let fac = factor_mod_p(f, p)?;
    let mut roots: Vec<u64> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| rat::residue(&(-num_bigint::BigInt::from(g.coeff(0))), p))
        .collect();
    roots.sort_unstable();
    Ok(roots)
}
