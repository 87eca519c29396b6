//! Galois groups as explicit automorphisms `theta -> g(theta)`.
//!
//! Discovery works p-adically: at a prime where `f` splits into distinct
//! linear factors the roots are lifted to `p^K`, and each automorphism is the
//! interpolating polynomial of a permutation of those roots. Candidates are
//! rationally reconstructed and then certified exactly over `Q`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modp::PolyModP;
use crate::modular;
use crate::number_field::{FieldElement, NumberField};
use crate::poly::PolyQ;
use crate::primes;
use crate::rat::{self, Rat};
use crate::splitting;

/// Largest degree handled by the permutation search.
pub const MAX_SEARCH_DEGREE: usize = 8;
/// Number of times the lift exponent is doubled before giving up.
pub const MAX_LIFT_DOUBLINGS: u32 = 3;
/// Default bound for the normal-element scan.
pub const DEFAULT_NORMAL_BOUND: u32 = 4;

const FILTER_PRIME: u64 = (1 << 61) - 1;

/// A field automorphism, stored as the image of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    image: FieldElement,
}

impl Automorphism {
    pub fn image(&self) -> &FieldElement {
        &self.image
    }

    /// `sigma(a)`: substitutes the image of `theta` into the coordinates of `a`.
    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        let field = a.field();
        let mut acc = field.zero();
        for c in a.coords().iter().rev() {
            acc = &(&acc * &self.image) + &field.rational(c.clone());
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Least element index in the class.
    pub representative: usize,
    /// Ascending element indices.
    pub members: Vec<usize>,
    pub centralizer_size: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// `Gal(L/Q)` with element 0 the identity.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    field: NumberField,
    elements: Vec<Automorphism>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    denominators: BigUint,
}

impl GaloisGroup {
    /// Certifies caller-supplied generator images and builds the group.
    ///
    /// The identity is moved to index 0; the other elements keep their order.
    pub fn from_automorphisms(field: &NumberField, images: Vec<FieldElement>) -> Result<Self> {
        let d = field.degree();
        if images.len() != d {
            return Err(Error::InvalidAutomorphisms(format!("expected {d} automorphisms, got {}", images.len())));
        }
        for (i, g) in images.iter().enumerate() {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !is_root_in_field(field, g) {
                return Err(Error::InvalidAutomorphisms(format!("image {i} ({g}) is not a root of the defining polynomial")));
            }
            if images[..i].contains(g) {
                return Err(Error::InvalidAutomorphisms(format!("image {i} ({g}) is repeated")));
            }
        }
        let theta = field.generator();
        let id = images
            .iter()
            .position(|g| *g == theta)
            .ok_or_else(|| Error::InvalidAutomorphisms("identity is missing".into()))?;
        let mut ordered = images;
        let identity = ordered.remove(id);
        ordered.insert(0, identity);
        Self::assemble(field, ordered.into_iter().map(|image| Automorphism { image }).collect())
    }

    fn assemble(field: &NumberField, elements: Vec<Automorphism>) -> Result<Self> {
        let d = elements.len();
        let mult = modular_mult_table(field, &elements)?;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if mult[mult[i][j]][k] != mult[i][mult[j][k]] {
                        return Err(Error::InvalidAutomorphisms("composition is not associative".into()));
                    }
                }
            }
        }
        let mut inverse = vec![0usize; d];
        for i in 0..d {
            inverse[i] = (0..d)
                .find(|&j| mult[i][j] == 0 && mult[j][i] == 0)
                .ok_or_else(|| Error::InvalidAutomorphisms(format!("element {i} has no inverse")))?;
        }
        let mut class_of = vec![usize::MAX; d];
        let mut classes = Vec::new();
        for g in 0..d {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..d).map(|h| mult[mult[h][g]][inverse[h]]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(ConjugacyClass { representative: g, centralizer_size: d / members.len(), members });
        }
        let denominators =
            rat::lcm_denominators(elements.iter().flat_map(|s| s.image.coords().iter()));
        Ok(GaloisGroup { field: field.clone(), elements, mult, inverse, classes, class_of, denominators })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    /// Index of `sigma_i o sigma_j`.
    pub fn mult(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Index into [`classes`](Self::classes) of the class containing element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|i| (0..i).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mult[cur][i];
            k += 1;
        }
        k
    }

    /// True if `p` divides a denominator of some automorphism coefficient.
    pub fn is_bad_prime(&self, p: u64) -> bool {
        (&self.denominators % p).is_zero()
    }

    /// Image of `a` under element `i`.
    pub fn apply(&self, i: usize, a: &FieldElement) -> FieldElement {
        self.elements[i].apply(a)
    }
}

fn is_root_in_field(field: &NumberField, g: &FieldElement) -> bool {
    let mut acc = field.zero();
    for c in field.defining_poly().coeffs().iter().rev() {
        acc = &(&acc * g) + &field.rational(c.clone());
    }
    acc.is_zero()
}

/// Composition table read off from images reduced mod a large prime.
///
/// Every image is already an exact root of `f`, so the images are the
/// automorphisms of `L`; the reduction only has to tell them apart.
fn modular_mult_table(field: &NumberField, elements: &[Automorphism]) -> Result<Vec<Vec<usize>>> {
    let d = elements.len();
    let candidates = (1u64 << 61..(1u64 << 62)).rev().filter(|&q| modular::is_prime_u64(q)).take(4);
    for q in candidates {
        let Ok(fq) = PolyModP::from_poly_q(field.defining_poly(), q) else { continue };
        let Ok(images) = elements
            .iter()
            .map(|s| PolyModP::from_poly_q(&s.image.to_poly(), q))
            .collect::<Result<Vec<_>>>()
        else {
            continue;
        };
        if (0..d).any(|i| images[..i].contains(&images[i])) {
            continue;
        }
        let mut mult = vec![vec![0usize; d]; d];
        for i in 0..d {
            for j in 0..d {
                // (sigma_i o sigma_j)(theta) = g_j(g_i(theta))
                let comp = images[j].compose_mod(&images[i], &fq);
                mult[i][j] = images
                    .iter()
                    .position(|g| *g == comp)
                    .ok_or_else(|| Error::InvalidAutomorphisms(format!("composition {i}*{j} leaves the set")))?;
            }
        }
        return Ok(mult);
    }
    Err(Error::InvalidAutomorphisms("images cannot be separated modulo any test prime".into()))
}

/// Finds all automorphisms of a Galois field of degree at most 8.
///
/// `lift_start` overrides the initial lift exponent `K`.
pub fn discover_automorphisms(field: &NumberField, lift_start: Option<u32>) -> Result<GaloisGroup> {
    let d = field.degree();
    if d > MAX_SEARCH_DEGREE {
        return Err(Error::DegreeTooLarge { degree: d, max: MAX_SEARCH_DEGREE });
    }
    if d == 1 {
        return GaloisGroup::from_automorphisms(field, vec![field.generator()]);
    }
    let f = field.defining_poly();
    let disc = field.discriminant();
    quick_galois_pretest(f, disc)?;
    let p = first_split_prime(f, disc)?;
    let roots = splitting::roots_mod_p(f, p)?;
    if roots.len() != d {
        return Err(Error::NotIrreducible(format!("expected {d} simple roots mod {p}")));
    }
    let mut k = lift_start.unwrap_or_else(|| default_lift_exponent(f, disc, p)).max(1);
    for _ in 0..=MAX_LIFT_DOUBLINGS {
        if let Some(images) = search_at_precision(field, &roots, p, k)? {
            return GaloisGroup::from_automorphisms(field, images);
        }
        k *= 2;
    }
    Err(Error::NotGalois(format!("fewer than {d} automorphisms certified after lifting to {p}^{}", k / 2)))
}

/// A Galois polynomial factors into equal-degree pieces at every unramified prime.
fn quick_galois_pretest(f: &PolyQ, disc: &BigInt) -> Result<()> {
    let mut tested = 0;
    for p in primes::small_primes(5000) {
        if (disc % p).is_zero() {
            continue;
        }
        let pattern = splitting::factor_mod_p(f, p)?.pattern;
        if pattern.uniform_degree().is_none() {
            return Err(Error::NotGalois(format!("mixed factor degrees {:?} mod {p}", pattern.factors)));
        }
        tested += 1;
        if tested == 60 {
            break;
        }
    }
    Ok(())
}

fn first_split_prime(f: &PolyQ, disc: &BigInt) -> Result<u64> {
    const SCAN_LIMIT: u64 = 1 << 24;
    for p in primes::prime_iter(3, SCAN_LIMIT)? {
        if (disc % p).is_zero() {
            continue;
        }
        if splitting::splits_completely(f, p)? {
            return Ok(p);
        }
    }
    Err(Error::NotGalois(format!("no totally split prime below {SCAN_LIMIT}")))
}

/// Smallest `K` with `p^K > 2 (d^2 * height * |disc|)^2`.
fn default_lift_exponent(f: &PolyQ, disc: &BigInt, p: u64) -> u32 {
    let d = f.degree().unwrap_or(1) as u64;
    let b = BigUint::from(d * d) * f.height() * disc.magnitude();
    let target = &b * &b * 2u32;
    let mut power = BigUint::one();
    let mut k = 0;
    while power <= target {
        power *= p;
        k += 1;
    }
    k
}

struct Lifted {
    modulus: BigInt,
    roots: Vec<BigInt>,
    vinv: Vec<Vec<BigInt>>,
}

impl Lifted {
    fn new(f: &PolyQ, roots: &[u64], p: u64, k: u32) -> Result<Self> {
        let modulus = num_traits::pow(BigInt::from(p), k as usize);
        let lifted: Vec<BigInt> =
            roots.iter().map(|&r| modular::hensel_lift_root(f, r, p, k)).collect::<Result<_>>()?;
        let d = roots.len();
        let vander: Vec<Vec<BigInt>> = lifted
            .iter()
            .map(|r| {
                let mut row = Vec::with_capacity(d);
                let mut pw = BigInt::one();
                for _ in 0..d {
                    row.push(pw.clone());
                    pw = (pw * r).mod_floor(&modulus);
                }
                row
            })
            .collect();
        let vinv = inverse_mod(&vander, &modulus, p).ok_or(Error::SingularMatrix)?;
        Ok(Lifted { modulus, roots: lifted, vinv })
    }

    /// Rational coefficients of the polynomial sending root `i` to root `perm[i]`.
    fn reconstruct(&self, perm: &[usize], disc: &BigInt) -> Option<Vec<Rat>> {
        let m = &self.modulus;
        let mut out = Vec::with_capacity(perm.len());
        for row in &self.vinv {
            let c = row.iter().zip(perm).fold(BigInt::zero(), |acc, (v, &j)| acc + v * &self.roots[j]).mod_floor(m);
            out.push(modular::rational_reconstruct(&c, m).or_else(|| disc_cleared(&c, m, disc))?);
        }
        Some(out)
    }

    /// Exactly certified automorphism for a root permutation, if one exists at this precision.
    fn certify(&self, field: &NumberField, perm: &[usize]) -> Result<Option<FieldElement>> {
        let Some(coeffs) = self.reconstruct(perm, field.discriminant()) else { return Ok(None) };
        if !passes_mod_q_filter(field.defining_poly(), &coeffs) {
            return Ok(None);
        }
        let g = field.element(coeffs)?;
        Ok(is_root_in_field(field, &g).then_some(g))
    }
}

/// Fallback reconstruction assuming the denominator divides `disc`.
fn disc_cleared(c: &BigInt, m: &BigInt, disc: &BigInt) -> Option<Rat> {
    let s = modular::symmetric_residue(&(c * disc), m);
    let bound: BigInt = num_integer::Roots::sqrt(&(m / 2u32));
    (s.abs() <= bound).then(|| Rat::new(s, disc.clone()))
}

fn inverse_mod(a: &[Vec<BigInt>], m: &BigInt, p: u64) -> Option<Vec<Vec<BigInt>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !(&aug[r][col] % p).is_zero())?;
        aug.swap(piv, col);
        let inv = modular::inv_mod(&aug[col][col], m)?;
        for c in 0..2 * n {
            aug[col][c] = (&aug[col][c] * &inv).mod_floor(m);
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..2 * n {
                    let t = &factor * &aug[col][c];
                    aug[r][c] = (&aug[r][c] - t).mod_floor(m);
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Permutations `pi` of `0..d` with `pi(0) = j` whose cycles all share one length >= 2.
fn semiregular_permutations(d: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; d];
    let mut used = vec![false; d];
    perm[0] = j;
    used[j] = true;
    fn rec(i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let d = perm.len();
        if i == d {
            if is_semiregular(perm) {
                out.push(perm.clone());
            }
            return;
        }
        for v in 0..d {
            if !used[v] && v != i {
                used[v] = true;
                perm[i] = v;
                rec(i + 1, perm, used, out);
                used[v] = false;
            }
        }
        perm[i] = usize::MAX;
    }
    rec(1, &mut perm, &mut used, &mut out);
    out
}

fn is_semiregular(perm: &[usize]) -> bool {
    let d = perm.len();
    let mut seen = vec![false; d];
    let mut len = None;
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut l = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            l += 1;
        }
        if l < 2 || len.is_some_and(|x| x != l) {
            return false;
        }
        len = Some(l);
    }
    true
}

/// Cheap necessary condition: `f(g) = 0 mod (f, q)` for a large prime `q`.
fn passes_mod_q_filter(f: &PolyQ, coeffs: &[Rat]) -> bool {
    let q = FILTER_PRIME;
    let Ok(fq) = PolyModP::from_poly_q(f, q) else { return true };
    let Ok(gq) = PolyModP::from_poly_q(&PolyQ::from_coeffs(coeffs.to_vec()), q) else { return true };
    fq.compose_mod(&gq, &fq.monic()).is_zero()
}

fn search_at_precision(field: &NumberField, roots: &[u64], p: u64, k: u32) -> Result<Option<Vec<FieldElement>>> {
    let d = field.degree();
    let lifted = Lifted::new(field.defining_poly(), roots, p, k)?;
    // indexed by the root that the image of theta lands on
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; d];
    let mut images: Vec<Option<FieldElement>> = vec![None; d];
    perms[0] = Some((0..d).collect());
    images[0] = Some(field.generator());
    for j in 1..d {
        if perms[j].is_some() {
            continue;
        }
        let mut hit = None;
        for perm in semiregular_permutations(d, j) {
            if let Some(g) = lifted.certify(field, &perm)? {
                hit = Some((perm, g));
                break;
            }
        }
        let Some((perm, g)) = hit else { return Ok(None) };
        perms[j] = Some(perm);
        images[j] = Some(g);
        // close under composition, acting on root permutations
        loop {
            let known: Vec<Vec<usize>> = perms.iter().flatten().cloned().collect();
            let mut added = false;
            for a in &known {
                for b in &known {
                    let c: Vec<usize> = (0..d).map(|i| b[a[i]]).collect();
                    let t = c[0];
                    match &perms[t] {
                        Some(existing) if *existing == c => {}
                        Some(_) => {
                            return Err(Error::NotIrreducible(format!(
                                "two root permutations agree at root 0 mod {p}; the polynomial is not irreducible"
                            )))
                        }
                        None => {
                            let Some(g) = lifted.certify(field, &c)? else { return Ok(None) };
                            perms[t] = Some(c);
                            images[t] = Some(g);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
    }
    Ok(Some(images.into_iter().map(|g| g.expect("every root index is filled")).collect()))
}

/// True iff the conjugates of `a` are linearly independent over `Q`.
pub fn is_normal_element(group: &GaloisGroup, a: &FieldElement) -> bool {
    conjugate_matrix(group, a).determinant().is_ok_and(|det| !det.is_zero())
}

fn conjugate_matrix(group: &GaloisGroup, a: &FieldElement) -> Matrix<Rat> {
    let rows = group.elements().iter().map(|s| s.apply(a).coords().to_vec()).collect();
    Matrix::from_rows(rows).expect("rectangular")
}

/// Deterministic scan for a normal element with small integer coordinates.
///
/// Shell `B` holds the vectors with max |coordinate| = B. Within a shell the
/// order is an odometer with the top coordinate most significant and each
/// digit running 0, 1, -1, 2, -2, ...
pub fn find_normal_element(group: &GaloisGroup, max_bound: u32) -> Result<FieldElement> {
    let field = group.field();
    let d = field.degree();
    for b in 1..=max_bound {
        let base = 2 * b as u64 + 1;
        let total = base.checked_pow(d as u32).ok_or(Error::NormalSearchExhausted(b))?;
        for n in 1..total {
            let mut coords = Vec::with_capacity(d);
            let mut v = n;
            let mut top = 0;
            for _ in 0..d {
                let digit = v % base;
                v /= base;
                let c = if digit % 2 == 1 { (digit as i64 + 1) / 2 } else { -(digit as i64 / 2) };
                top = top.max(c.unsigned_abs());
                coords.push(rat::int(c));
            }
            if top != b as u64 {
                continue;
            }
            let a = field.element(coords)?;
            if is_normal_element(group, &a) && a.min_poly().degree() == Some(d) {
                return Ok(a);
            }
        }
    }
    Err(Error::NormalSearchExhausted(max_bound))
}

/// The field re-presented by the integral minimal polynomial of a normal element.
#[derive(Clone, Debug)]
pub struct Rebased {
    pub group: GaloisGroup,
    /// The normal element in the new presentation (`theta / scale`).
    pub alpha: FieldElement,
    /// `alpha_j = tau_j(alpha)` in group order.
    pub conjugates: Vec<FieldElement>,
    /// `N` with `N * alpha` integral.
    pub scale: BigInt,
}

/// Presents `L` as `Q[y]/(F)` with `F = N^d m(y/N)`, `m` the minimal polynomial of `a`.
pub fn rebase_to_normal(group: &GaloisGroup, a: &FieldElement) -> Result<Rebased> {
    let old = group.field();
    let d = old.degree();
    if a.field() != old {
        return Err(Error::FieldMismatch);
    }
    if !is_normal_element(group, a) {
        return Err(Error::NotNormal);
    }
    let m = a.min_poly();
    let scale = modular::bigint_from_biguint(m.denominator_lcm());
    let beta = a.scale(&Rat::from_integer(scale.clone()));
    let new_field = NumberField::from_minimal_polynomial(m.scale_roots(&scale), old.irreducibility_certified())?;
    // columns: old coordinates of beta^i
    let mut cols = Vec::with_capacity(d);
    let mut pw = old.one();
    for _ in 0..d {
        cols.push(pw.coords().to_vec());
        pw = &pw * &beta;
    }
    let to_new = Matrix::from_rows(cols)?.transpose().inverse()?;
    let transport = |x: &FieldElement| -> Result<FieldElement> { new_field.element(to_new.mul_vec(x.coords())?) };
    let images = group.elements().iter().map(|s| transport(&s.apply(&beta))).collect::<Result<Vec<_>>>()?;
    let new_group = GaloisGroup::from_automorphisms(&new_field, images)?;
    let inv_scale = Rat::new(BigInt::one(), scale.clone());
    let alpha = new_field.generator().scale(&inv_scale);
    let conjugates = new_group.elements().iter().map(|s| s.image().scale(&inv_scale)).collect();
    Ok(Rebased { group: new_group, alpha, conjugates, scale })
}
