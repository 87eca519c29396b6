//! Arithmetic in `L = Q[x]/(f)` for monic irreducible integral `f`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::modular;
use crate::poly::PolyQ;
use crate::primes;
use crate::rat::{self, Rat};
use crate::splitting;

/// How the constructor should treat irreducibility of the defining polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Prove it from factorization patterns (and rational roots for degree <= 3).
    Certify,
    /// Trust the caller. Galois discovery still fails loudly on zero divisors.
    Assume,
}

#[derive(Debug)]
struct FieldData {
    poly: PolyQ,
    /// Integer coefficients of `poly`, lowest degree first.
    int_coeffs: Vec<BigInt>,
    degree: usize,
    disc: BigInt,
    certified: bool,
}

/// `Q[theta]/(f)`; cheap to clone, compared by defining polynomial.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn new(poly: PolyQ, irreducibility: Irreducibility) -> Result<Self> {
        let degree = match poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidPolynomial("defining polynomial must have degree >= 1".into())),
        };
        if !poly.is_monic() || !poly.is_integral() {
            return Err(Error::InvalidPolynomial("defining polynomial must be monic with integer coefficients".into()));
        }
        let disc = poly.discriminant();
        if disc.is_zero() {
            return Err(Error::NotIrreducible("polynomial has repeated roots".into()));
        }
        let disc = disc.numer().clone();
        let certified = match certify_irreducible(&poly, &disc)? {
            true => true,
            false if irreducibility == Irreducibility::Assume => false,
            false => return Err(Error::IrreducibilityUnproven),
        };
        let int_coeffs = poly.coeffs().iter().map(|c| c.numer().clone()).collect();
        Ok(NumberField(Arc::new(FieldData { poly, int_coeffs, degree, disc, certified })))
    }

    /// For the minimal polynomial of a degree-`d` element of a degree-`d` field;
    /// inherits the certification status of the original field.
    pub(crate) fn from_minimal_polynomial(poly: PolyQ, certified: bool) -> Result<Self> {
        let field = NumberField::new(poly, Irreducibility::Assume)?;
        let mut data = Arc::try_unwrap(field.0).expect("fresh field");
        data.certified |= certified;
        Ok(NumberField(Arc::new(data)))
    }

    pub fn defining_poly(&self) -> &PolyQ {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.0.disc
    }

    /// True when irreducibility was proven rather than assumed.
    pub fn irreducibility_certified(&self) -> bool {
        self.0.certified
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    /// Reduces an arbitrary polynomial in `theta` modulo the defining polynomial.
    pub fn from_poly(&self, p: &PolyQ) -> FieldElement {
        let r = p.rem(self.defining_poly());
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), Rat::zero());
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_ints(&self, coords: &[i64]) -> Result<FieldElement> {
        self.element(coords.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn rational(&self, r: Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = r;
        FieldElement { field: self.clone(), coords }
    }

    pub fn zero(&self) -> FieldElement {
        self.rational(Rat::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.rational(Rat::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&PolyQ::x())
    }

    /// `Tr(theta^k)` for `k = 0..=n`, by Newton's identities.
    pub fn power_sums(&self, n: usize) -> Vec<Rat> {
        let d = self.degree();
        let f = self.defining_poly();
        // a_i is the coefficient of x^(d-i)
        let a: Vec<Rat> = (0..=d).map(|i| f.coeff(d - i)).collect();
        let mut s: Vec<Rat> = Vec::with_capacity(n + 1);
        s.push(Rat::from_integer(BigInt::from(d)));
        for k in 1..=n {
            let mut acc = if k <= d { &a[k] * Rat::from_integer(BigInt::from(k)) } else { Rat::zero() };
            for i in 1..=k.min(d) {
                if i < k {
                    acc += &a[i] * &s[k - i];
                }
            }
            s.push(-acc);
        }
        s
    }
}

/// Degree patterns (and a rational root test for `d <= 3`) as a certificate.
fn certify_irreducible(f: &PolyQ, disc: &BigInt) -> Result<bool> {
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return Ok(true);
    }
    if d <= 3 {
        if let Some(has_root) = has_integer_root(f) {
            if has_root {
                return Err(Error::NotIrreducible("polynomial has a rational root".into()));
            }
            return Ok(true);
        }
    }
    // degrees a proper factor over Q could have, intersected over primes
    let mut possible: Vec<bool> = (0..=d).map(|k| k > 0 && k < d).collect();
    let mut tried = 0;
    for p in primes::small_primes(2000) {
        if (disc % p).is_zero() {
            continue;
        }
        let pattern = splitting::factor_mod_p(f, p)?.pattern;
        let mut sums = vec![false; d + 1];
        sums[0] = true;
        for &(deg, mult) in &pattern.factors {
            for _ in 0..mult {
                for s in (deg..=d).rev() {
                    if sums[s - deg] {
                        sums[s] = true;
                    }
                }
            }
        }
        for k in 1..d {
            possible[k] &= sums[k];
        }
        if !possible.iter().any(|&b| b) {
            return Ok(true);
        }
        tried += 1;
        if tried == 64 {
            break;
        }
    }
    Ok(false)
}

/// `Some(true)` if the monic integral `f` has an integer (= rational) root,
/// `None` if the constant term could not be factored.
fn has_integer_root(f: &PolyQ) -> Option<bool> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Some(true);
    }
    let (primes, cofactor) = modular::factor_integer(&rat::abs_numer(&c0));
    if !cofactor.is_one() {
        return None;
    }
    let n = rat::abs_numer(&c0);
    let mut divisors = vec![BigUint::one()];
    for q in primes {
        let mut extended = Vec::new();
        for dv in &divisors {
            let mut pw = dv.clone();
            while (&n % &pw).is_zero() {
                extended.push(pw.clone());
                pw *= &q;
            }
        }
        divisors = extended;
    }
    Some(divisors.into_iter().any(|dv| {
        let r = Rat::from_integer(modular::bigint_from_biguint(dv));
        f.eval(&r).is_zero() || f.eval(&-r).is_zero()
    }))
}

/// Integer numerators over a common denominator.
fn integral_parts(coords: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let den = coords.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let nums = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Element of a [`NumberField`]: coordinates on `1, theta, ..., theta^(d-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rat>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.to_poly())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn to_poly(&self) -> PolyQ {
        PolyQ::from_coeffs(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    /// Product with denominators cleared, so the inner loops run on integers.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.field.degree();
        let (a, da) = integral_parts(&self.coords);
        let (b, db) = integral_parts(&other.coords);
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    prod[i + j] += ai * bj;
                }
            }
        }
        let f = &self.field.0.int_coeffs;
        for k in (d..2 * d - 1).rev() {
            let lead = core::mem::take(&mut prod[k]);
            if lead.is_zero() {
                continue;
            }
            for (t, ft) in f[..d].iter().enumerate() {
                if !ft.is_zero() {
                    prod[k - d + t] -= &lead * ft;
                }
            }
        }
        let den = da * db;
        prod.truncate(d);
        let coords = prod.into_iter().map(|c| Rat::new(c, den.clone())).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse through the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.to_poly().ext_gcd(self.field.defining_poly());
        if g != PolyQ::one() {
            return Err(Error::NotIrreducible(alloc::format!("{} is a zero divisor", self)));
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `Some(r)` iff the element is the rational number `r`.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    /// Trace of the multiplication-by-self map.
    pub fn trace(&self) -> Rat {
        let s = self.field.power_sums(self.field.degree());
        self.coords.iter().zip(&s).fold(Rat::zero(), |acc, (c, sk)| acc + c * sk)
    }

    /// Monic minimal polynomial: the first linear dependency among `1, a, a^2, ...`.
    pub fn min_poly(&self) -> PolyQ {
        let mut powers: Vec<Vec<Rat>> = vec![self.field.one().coords];
        let mut cur = self.clone();
        loop {
            if let Some(comb) = linalg::express_in_span(&powers, &cur.coords) {
                let mut coeffs: Vec<Rat> = comb.into_iter().map(|c| -c).collect();
                coeffs.push(Rat::one());
                return PolyQ::from_coeffs(coeffs);
            }
            powers.push(cur.coords.clone());
            cur = &cur * self;
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl linalg::Scalar for FieldElement {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        FieldElement::inv(self).ok()
    }
}

pub type MatL = Matrix<FieldElement>;

/// Exact solution of `m * z = rhs` over the number field.
pub fn solve_linear_over_field(m: &MatL, rhs: &[FieldElement]) -> Result<Vec<FieldElement>> {
    m.solve(rhs)
}

/// Smallest positive integer `N` making `N^d f(x/N)` integral (via the lcm of denominators).
pub fn integral_scale(f: &PolyQ) -> BigInt {
    modular::bigint_from_biguint(f.denominator_lcm())
}

/// Text label for diagnostics.
pub fn describe(field: &NumberField) -> String {
    alloc::format!("Q[x]/({})", field.defining_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn eisenstein() -> NumberField {
        NumberField::new(PolyQ::from_ints(&[1, 1, 1]), Irreducibility::Certify).unwrap()
    }

    #[test]
    fn multiplication_and_inverse() {
        let k = eisenstein();
        let t = k.generator();
        assert_eq!(&t * &t, k.from_ints(&[-1, -1]).unwrap());
        assert_eq!(t.inv().unwrap(), k.from_ints(&[-1, -1]).unwrap());
        let a = k.element(vec![frac(3, 2), frac(-2, 7)]).unwrap();
        assert_eq!(&k.one() * &a, a);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn minimal_polynomials() {
        let k = eisenstein();
        assert_eq!(k.generator().min_poly(), PolyQ::from_ints(&[1, 1, 1]));
        assert_eq!(k.from_ints(&[1, 2]).unwrap().min_poly(), PolyQ::from_ints(&[3, 0, 1]));
        assert_eq!(k.rational(int(5)).min_poly(), PolyQ::from_ints(&[-5, 1]));
    }

    #[test]
    fn rationality() {
        let k = eisenstein();
        assert_eq!(k.element(vec![frac(3, 2), int(0)]).unwrap().as_rational(), Some(frac(3, 2)));
        assert_eq!(k.generator().as_rational(), None);
        assert_eq!(k.generator().trace(), int(-1));
    }

    #[test]
    fn linear_systems_over_the_field() {
        let k = eisenstein();
        let t = k.generator();
        let m = Matrix::from_rows(vec![vec![t.clone()]]).unwrap();
        assert_eq!(solve_linear_over_field(&m, &[k.one()]).unwrap(), vec![k.from_ints(&[-1, -1]).unwrap()]);
        // Vandermonde-like system in the two conjugates theta, theta^2
        let conj = &t * &t;
        let m = Matrix::from_rows(vec![vec![t.clone(), conj.clone()], vec![conj.clone(), t.clone()]]).unwrap();
        let z = solve_linear_over_field(&m, &[k.one(), k.zero()]).unwrap();
        assert!((&(&z[0] * &t) + &(&z[1] * &conj)).is_one());
        assert!((&(&z[0] * &conj) + &(&z[1] * &t)).is_zero());
    }

    #[test]
    fn constructor_checks() {
        assert!(matches!(
            NumberField::new(PolyQ::from_ints(&[-1, 0, 1]), Irreducibility::Certify),
            Err(Error::NotIrreducible(_))
        ));
        assert!(matches!(
            NumberField::new(PolyQ::from_ints(&[1, 2]), Irreducibility::Certify),
            Err(Error::InvalidPolynomial(_))
        ));
        // (x^2+1)(x^2+2) never has an irreducible-certificate
        let reducible = PolyQ::from_ints(&[2, 0, 3, 0, 1]);
        assert_eq!(NumberField::new(reducible.clone(), Irreducibility::Certify), Err(Error::IrreducibilityUnproven));
        assert!(NumberField::new(reducible, Irreducibility::Assume).is_ok());
        // x^4 + x^3 + x^2 + x + 1 is inert at 2, so certified
        assert!(NumberField::new(PolyQ::from_ints(&[1, 1, 1, 1, 1]), Irreducibility::Certify).is_ok());
    }
}
