//! Closed-form identity-class recurrences for standard families of fields.
//!
//! Every constructor builds the field, discovers (or certifies) its group,
//! solves the generic system, and refuses to return unless the closed form
//! agrees with the generic solution exactly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::galois::{self, GaloisGroup};
use crate::modular;
use crate::number_field::{FieldElement, Irreducibility, NumberField};
use crate::poly::PolyQ;
use crate::rat::{self, Rat};
use crate::recurrence::Recurrence;
use crate::verify::Bundle;

/// A family member: the full bundle plus the closed-form identity recurrence.
#[derive(Clone, Debug)]
pub struct Family {
    pub bundle: Bundle,
    pub closed_form: Recurrence,
    pub description: String,
}

fn condition(clause: &str, detail: impl Into<String>) -> Error {
    Error::FamilyCondition { clause: clause.to_string(), detail: detail.into() }
}

fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let (sn, sd) = (n.sqrt(), d.sqrt());
    &sn * &sn == *n && &sd * &sd == *d
}

fn is_squarefree(n: i64) -> bool {
    let m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let (primes, cofactor) = modular::factor_integer(&m.into());
    primes.iter().all(|q| (m % (q * q)) != num_bigint::BigUint::zero()) && cofactor.is_one()
}

/// Field for a monic rational minimal polynomial `m`, generated by `N * alpha`.
fn field_for(m: &PolyQ, irreducibility: Irreducibility) -> Result<(NumberField, Rat)> {
    let scale = modular::bigint_from_biguint(m.denominator_lcm());
    let field = NumberField::new(m.scale_roots(&scale), irreducibility)?;
    Ok((field, Rat::new(BigInt::one(), scale)))
}

fn finish(group: GaloisGroup, alpha: FieldElement, closed_form: Recurrence, description: String) -> Result<Family> {
    let bundle = Bundle::for_all_classes(group, alpha)?;
    let generic = &bundle
        .class_recurrence(0)
        .ok_or_else(|| Error::ClosedFormMismatch("identity class missing".into()))?
        .recurrence;
    if generic != &closed_form {
        return Err(Error::ClosedFormMismatch(format!(
            "{description}: closed form {:?} but generic solve gave {:?}",
            closed_form.initial().iter().map(rat::to_string).collect::<Vec<_>>(),
            generic.initial().iter().map(rat::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(Family { bundle, closed_form, description })
}

/// `x^2 - c1 x + c2` with `c1 != 0`; closed form `(1/c1, 1)`.
pub fn quadratic(c1: &Rat, c2: &Rat) -> Result<Family> {
    if c1.is_zero() {
        return Err(condition("c1 != 0", "the trace of the normal element must be nonzero"));
    }
    let disc = c1 * c1 - c2 * rat::int(4);
    if is_rational_square(&disc) {
        return Err(condition("irreducible", format!("c1^2 - 4 c2 = {disc} is a square")));
    }
    let m = PolyQ::from_coeffs(vec![c2.clone(), -c1, Rat::one()]);
    let (field, inv_scale) = field_for(&m, Irreducibility::Certify)?;
    let group = galois::discover_automorphisms(&field, None)?;
    let alpha = field.generator().scale(&inv_scale);
    let closed = Recurrence::new(m.clone(), vec![c1.recip(), Rat::one()])?;
    finish(group, alpha, closed, format!("quadratic {m}"))
}

/// `Q(sqrt(D))` through the normal element `(-1 + sqrt D)/2` if `D = 1 mod 4`, else `1 + sqrt D`.
pub fn quadratic_sqrt(d: i64) -> Result<Family> {
    if d == 0 || d == 1 || !is_squarefree(d) {
        return Err(condition("D squarefree", format!("D = {d} must be a squarefree integer other than 0, 1")));
    }
    if d.rem_euclid(4) == 1 {
        quadratic(&rat::int(-1), &rat::frac(1 - d, 4))
    } else {
        quadratic(&rat::int(2), &rat::int(1 - d))
    }
}

/// Closed-form `a_2` for a cyclic cubic `x^3 - c1 x^2 + c2 x - c3`.
pub fn cubic_a2(c1: &Rat, c2: &Rat, c3: &Rat) -> Rat {
    let c1sq = c1 * c1;
    let num = rat::int(4) * &c1sq * c2 - rat::int(3) * c1 * c3 - rat::int(2) * c2 * c2 - &c1sq * &c1sq;
    num / (c1 * (rat::int(3) * c2 - &c1sq))
}

/// Cyclic cubic `x^3 - c1 x^2 + c2 x - c3`; closed form `(1/c1, 1, a_2)`.
pub fn cubic(c1: &Rat, c2: &Rat, c3: &Rat) -> Result<Family> {
    if c1.is_zero() {
        return Err(condition("c1 != 0", "the trace of the normal element must be nonzero"));
    }
    if (rat::int(3) * c2 - c1 * c1).is_zero() {
        return Err(condition("3 c2 - c1^2 != 0", "the element would not be normal"));
    }
    let m = PolyQ::from_coeffs(vec![-c3, c2.clone(), -c1, Rat::one()]);
    let (field, inv_scale) = field_for(&m, Irreducibility::Certify)?;
    let group = galois::discover_automorphisms(&field, None)?;
    let alpha = field.generator().scale(&inv_scale);
    let closed = Recurrence::new(m.clone(), vec![c1.recip(), Rat::one(), cubic_a2(c1, c2, c3)])?;
    finish(group, alpha, closed, format!("cubic {m}"))
}

/// Shanks' `x^3 - t x^2 - (t+3) x - 1`; closed form `(1/t, 1, 2/t + 1 + t)`.
pub fn cubic_shanks(t: &Rat) -> Result<Family> {
    if t.is_zero() {
        return Err(condition("t != 0", "the trace t must be nonzero"));
    }
    let c2 = -(t + rat::int(3));
    let fam = cubic(t, &c2, &Rat::one())?;
    let shanks = vec![t.recip(), Rat::one(), rat::int(2) / t + Rat::one() + t];
    if fam.closed_form.initial() != shanks.as_slice() {
        return Err(Error::ClosedFormMismatch(format!("Shanks values disagree for t = {t}")));
    }
    Ok(Family { description: format!("Shanks cubic t = {t}"), ..fam })
}

/// Validated parameters of a cyclic quartic `Q(sqrt(r (a + b sqrt d)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticParams {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub r: i64,
    /// Positive integer with `a^2 - b^2 d = c^2 d`.
    pub c: i64,
}

pub fn quartic_params(a: i64, b: i64, d: i64, r: i64) -> Result<QuarticParams> {
    if a == 0 || b == 0 || d == 0 || r == 0 {
        return Err(condition("nonzero", "a, b, d and r must all be nonzero"));
    }
    if a.gcd(&b) != 1 {
        return Err(condition("1", format!("gcd(a, b) = {} != 1", a.gcd(&b))));
    }
    if d == 1 || r <= 0 {
        return Err(condition("2", "need d != 1 and r > 0"));
    }
    if !is_squarefree(d) || !is_squarefree(r) {
        return Err(condition("3", "d and r must be squarefree"));
    }
    let (a2, b2d) = (a as i128 * a as i128, b as i128 * b as i128 * d as i128);
    let diff = a2 - b2d;
    if diff % d as i128 != 0 || diff / (d as i128) <= 0 {
        return Err(condition("5", format!("(a^2 - b^2 d)/d = {diff}/{d} is not a positive integer")));
    }
    let csq = diff / d as i128;
    let c = csq.sqrt();
    if c * c != csq {
        return Err(condition("5", format!("(a^2 - b^2 d)/d = {csq} is not a square")));
    }
    if is_square_in_quadratic_field(r * a, r * b, d) {
        return Err(condition("4", "sqrt(r(a + b sqrt d)) lies in Q(sqrt d)"));
    }
    Ok(QuarticParams { a, b, d, r, c: c as i64 })
}

/// Is `u + v sqrt(d)` a square in `Q(sqrt d)` (`d` squarefree, not 1)?
fn is_square_in_quadratic_field(u: i64, v: i64, d: i64) -> bool {
    let (u, v, d) = (rat::int(u), rat::int(v), rat::int(d));
    // a square has square norm
    let Some(n) = rational_sqrt(&(&u * &u - &v * &v * &d)) else { return false };
    // (x + y sqrt d)^2 = u + v sqrt d forces x^2 = (u +- n)/2 and y = v/(2x)
    [&u + &n, &u - &n].iter().any(|s| {
        let Some(x) = rational_sqrt(&(s / rat::int(2))) else { return false };
        if x.is_zero() {
            return v.is_zero() && rational_sqrt(&(&u / &d)).is_some();
        }
        let y = &v / (rat::int(2) * &x);
        &x * &x + &d * &y * &y == u
    })
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    is_rational_square(r).then(|| rat::from_bigint(r.numer().sqrt()) / rat::from_bigint(r.denom().sqrt()))
}

/// Minimal polynomial of `c + rho_+ + rho_- + r sqrt d`.
pub fn quartic_poly(q: &QuarticParams) -> PolyQ {
    let (a, d, r, c) = (BigInt::from(q.a), BigInt::from(q.d), BigInt::from(q.r), BigInt::from(q.c));
    let e = &c * &c - BigInt::from(2) * &r * &a + &r * &r * &d;
    let coeffs = vec![
        &e * &e,
        -BigInt::from(4) * &c * &e,
        BigInt::from(2) * (BigInt::from(3) * &c * &c - BigInt::from(2) * &r * &a - &r * &r * &d),
        -BigInt::from(4) * &c,
        BigInt::one(),
    ];
    PolyQ::from_coeffs(coeffs.into_iter().map(rat::from_bigint).collect())
}

/// Closed-form `a_0..a_3` for the cyclic quartic family.
pub fn quartic_initial(q: &QuarticParams) -> Vec<Rat> {
    let (a, b, d, r, c) = (rat::int(q.a), rat::int(q.b), rat::int(q.d), rat::int(q.r), rat::int(q.c));
    let c2 = &c * &c;
    let b2 = &b * &b;
    let r2ad = &r * &r * &a * &d;
    let a2 = (rat::int(9) * &a * &c2 + rat::int(2) * &r * &d * (&b2 + rat::int(3) * &c2) + &r2ad) / (rat::int(4) * &a * &c);
    let a3 = rat::int(4) * (&a * &c2 + &r * &d * (&b2 + rat::int(2) * &c2) + &r2ad) / &a;
    vec![(rat::int(4) * &c).recip(), Rat::one(), a2, a3]
}

pub fn quartic_cyclic(a: i64, b: i64, d: i64, r: i64) -> Result<Family> {
    let params = quartic_params(a, b, d, r)?;
    let f = quartic_poly(&params);
    let field = NumberField::new(f.clone(), Irreducibility::Certify)?;
    let group = galois::discover_automorphisms(&field, None)?;
    if !(1..4).any(|i| group.element_order(i) == 4) {
        return Err(condition("cyclic", "the Galois group is not cyclic of order 4"));
    }
    let closed = Recurrence::new(f.clone(), quartic_initial(&params))?;
    finish(group, field.generator(), closed, format!("cyclic quartic (a, b, d, r) = ({a}, {b}, {d}, {r}), c = {}", params.c))
}

/// `Q(zeta_q)` with `tau_j(zeta) = zeta^j`; closed form `(-1, 1, 0, ..., 0)`.
pub fn cyclotomic(q: u64) -> Result<Family> {
    if !modular::is_prime_u64(q) {
        return Err(condition("q prime", format!("{q} is not prime")));
    }
    let d = (q - 1) as usize;
    let f = PolyQ::from_coeffs(vec![Rat::one(); d + 1]);
    let field = NumberField::new(f.clone(), Irreducibility::Certify)?;
    let theta = field.generator();
    let images: Vec<FieldElement> = (1..=d as u64).map(|j| theta.pow(j)).collect();
    let group = GaloisGroup::from_automorphisms(&field, images)?;
    let mut initial = vec![Rat::zero(); d];
    initial[0] = rat::int(-1);
    if d > 1 {
        initial[1] = Rat::one();
    }
    let closed = Recurrence::new(f, initial)?;
    finish(group, theta, closed, format!("cyclotomic q = {q}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn quadratic_examples() {
        let fam = quadratic(&int(-1), &int(1)).unwrap();
        assert_eq!(fam.closed_form.initial(), &[int(-1), int(1)]);
        assert_eq!(fam.closed_form.char_poly(), &PolyQ::from_ints(&[1, 1, 1]));
        let fam = quadratic(&frac(1, 2), &frac(3, 5)).unwrap();
        assert_eq!(fam.closed_form.initial(), &[int(2), int(1)]);
        assert!(matches!(quadratic(&int(0), &int(1)), Err(Error::FamilyCondition { .. })));
        assert!(matches!(quadratic(&int(3), &int(2)), Err(Error::FamilyCondition { .. })));
        assert!(quadratic_sqrt(-3).is_ok());
        assert!(quadratic_sqrt(2).is_ok());
        assert!(quadratic_sqrt(12).is_err());
    }

    #[test]
    fn shanks_t1() {
        let fam = cubic_shanks(&int(1)).unwrap();
        assert_eq!(fam.closed_form.char_poly(), &PolyQ::from_ints(&[-1, -4, -1, 1]));
        assert_eq!(fam.closed_form.initial(), &[int(1), int(1), int(4)]);
    }

    #[test]
    fn quartic_conditions() {
        assert_eq!(quartic_params(2, 1, 2, 1).unwrap().c, 1);
        let clause = |r: Result<QuarticParams>| match r {
            Err(Error::FamilyCondition { clause, .. }) => clause,
            other => panic!("{other:?}"),
        };
        assert_eq!(clause(quartic_params(4, 2, 2, 1)), "1");
        assert_eq!(clause(quartic_params(2, 1, 2, -1)), "2");
        assert_eq!(clause(quartic_params(2, 1, 8, 1)), "3");
        assert_eq!(clause(quartic_params(3, 1, 2, 1)), "5");
    }

    #[test]
    fn cyclotomic_five() {
        let fam = cyclotomic(5).unwrap();
        assert_eq!(fam.closed_form.initial(), &[int(-1), int(1), int(0), int(0)]);
        assert!(matches!(cyclotomic(9), Err(Error::FamilyCondition { .. })));
    }
}
