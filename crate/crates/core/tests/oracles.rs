//! Worked examples checked against independent computations.

use num_bigint::BigInt;
use num_traits::Zero;

use splitrec_core::galois::{discover_automorphisms, find_normal_element, is_normal_element, rebase_to_normal};
use splitrec_core::linalg::Matrix;
use splitrec_core::modular::{crt, hensel_lift_root, kronecker, rational_reconstruct};
use splitrec_core::rat::{frac, int};
use splitrec_core::splitting::{self, factor_mod_p, frobenius_class, splits_completely};
use splitrec_core::{catalog, families, idempotent, primes, Error, GaloisGroup, Irreducibility, NumberField, PolyModP, PolyQ};
use splitrec_core::{IdempotentTarget, Rat};

fn field(coeffs: &[i64]) -> NumberField {
    NumberField::new(PolyQ::from_ints(coeffs), Irreducibility::Certify).unwrap()
}

fn group(coeffs: &[i64]) -> GaloisGroup {
    discover_automorphisms(&field(coeffs), None).unwrap()
}

/// Repeated multiplication, reducing after every step.
fn naive_pow(base: &PolyModP, e: u64, m: &PolyModP) -> PolyModP {
    (0..e).fold(PolyModP::one(base.prime()), |acc, _| acc.mul(base).rem(m))
}

#[test]
fn modular_powers() {
    let m = PolyModP::new(5, vec![1, 1, 1]);
    let x = PolyModP::x(5);
    assert_eq!(x.pow_mod_u64(1, &m).unwrap(), x);
    assert_eq!(x.pow_mod_u64(2, &m).unwrap(), PolyModP::new(5, vec![4, 4]));
    let fib = PolyModP::new(7, vec![6, 6, 1]);
    let x7 = PolyModP::x(7);
    assert_eq!(x7.pow_mod_u64(7, &fib).unwrap(), PolyModP::new(7, vec![1, 6]));
    for e in 0..40 {
        assert_eq!(x7.pow_mod_u64(e, &fib).unwrap(), naive_pow(&x7, e, &fib));
    }
    assert!(x.pow_mod_u64(3, &PolyModP::new(5, vec![1, 2])).is_err(), "non-monic modulus");
    assert!(x.pow_mod_u64(3, &fib).is_err(), "mismatched primes");
}

#[test]
fn reconstruction_and_lifting() {
    let m = BigInt::from(101);
    assert_eq!(rational_reconstruct(&BigInt::from(0), &m), Some(int(0)));
    assert_eq!(rational_reconstruct(&BigInt::from(51), &m), Some(frac(1, 2)));
    assert_eq!(rational_reconstruct(&BigInt::from(5), &m), Some(int(5)));

    assert_eq!(hensel_lift_root(&PolyQ::from_ints(&[-2, 0, 1]), 3, 7, 2).unwrap(), BigInt::from(10));
    assert_eq!(hensel_lift_root(&PolyQ::from_ints(&[-5, 1]), 5, 7, 3).unwrap(), BigInt::from(5));
    let lifted = hensel_lift_root(&PolyQ::from_ints(&[1, 1, 1]), 2, 7, 2).unwrap();
    let brute: Vec<i64> = (0..49).filter(|r| (r * r + r + 1) % 49 == 0 && r % 7 == 2).collect();
    assert_eq!(brute, vec![lifted.to_string().parse::<i64>().unwrap()]);
    assert!(matches!(hensel_lift_root(&PolyQ::from_ints(&[0, 0, 1]), 0, 7, 2), Err(Error::SingularRoot(7))));
}

#[test]
fn gcd_and_crt() {
    let a = PolyModP::new(5, vec![4, 0, 1]);
    let b = PolyModP::new(5, vec![4, 1]);
    assert_eq!(a.gcd(&b), PolyModP::new(5, vec![4, 1]));
    let f = PolyModP::new(5, vec![2, 0, 3]);
    assert_eq!(f.gcd(&f), f.monic());
    let (x, m) = crt(&[(BigInt::from(2), BigInt::from(3)), (BigInt::from(3), BigInt::from(5))]).unwrap();
    assert_eq!((x, m), (BigInt::from(8), BigInt::from(15)));
    assert!(crt(&[(BigInt::from(1), BigInt::from(4)), (BigInt::from(3), BigInt::from(6))]).is_err());
}

#[test]
fn field_arithmetic_examples() {
    let k = field(&[1, 1, 1]);
    let theta = k.generator();
    let minus_theta_minus_one = k.from_ints(&[-1, -1]).unwrap();
    assert_eq!(&theta * &theta, minus_theta_minus_one);
    assert_eq!(theta.inv().unwrap(), minus_theta_minus_one);
    assert_eq!(k.from_ints(&[1, 2]).unwrap().min_poly(), PolyQ::from_ints(&[3, 0, 1]));
    assert_eq!(k.rational(int(5)).min_poly(), PolyQ::from_ints(&[-5, 1]));
    assert_eq!(k.rational(frac(3, 2)).as_rational(), Some(frac(3, 2)));
    assert_eq!(theta.as_rational(), None);
    assert!(matches!(k.zero().inv(), Err(Error::DivisionByZero)));

    let one_by_one = Matrix::from_rows(vec![vec![theta.clone()]]).unwrap();
    let z = splitrec_core::number_field::solve_linear_over_field(&one_by_one, &[k.one()]).unwrap();
    assert_eq!(z, vec![minus_theta_minus_one]);

    // Vandermonde of the two conjugates of theta
    let g = discover_automorphisms(&k, None).unwrap();
    let conj = idempotent::conjugates(&g, &theta);
    let rows = vec![conj.clone(), conj.iter().map(|c| g.apply(1, c)).collect()];
    let m = Matrix::from_rows(rows).unwrap();
    let z = splitrec_core::number_field::solve_linear_over_field(&m, &[k.one(), k.zero()]).unwrap();
    assert_eq!(m.mul_vec(&z).unwrap(), vec![k.one(), k.zero()]);

    // the trace of a normal element is minus the next-to-leading coefficient of its minimal polynomial
    let a = k.from_ints(&[3, 1]).unwrap();
    let sum = idempotent::conjugates(&g, &a).iter().fold(k.zero(), |acc, c| &acc + c);
    assert_eq!(sum.as_rational(), Some(-a.min_poly().coeff(1)));
    assert_eq!(a.trace(), -a.min_poly().coeff(1));
}

#[test]
fn automorphism_examples() {
    let g = group(&[1, 1, 1]);
    let images: Vec<PolyQ> = g.elements().iter().map(|s| s.image().to_poly()).collect();
    assert_eq!(images, vec![PolyQ::x(), PolyQ::from_ints(&[-1, -1])]);
    let g = group(&[-2, 0, 1]);
    let images: Vec<PolyQ> = g.elements().iter().map(|s| s.image().to_poly()).collect();
    assert_eq!(images, vec![PolyQ::x(), PolyQ::from_ints(&[0, -1])]);

    let g = group(&[1, 1, 1, 1, 1]);
    let theta = g.field().generator();
    // discovery orders by root index; as a set the images are the powers zeta^j
    for j in 1..=4 {
        assert!(g.elements().iter().any(|s| *s.image() == theta.pow(j)), "zeta -> zeta^{j}");
    }
    assert!(g.is_abelian());
    let mut orders: Vec<usize> = (0..4).map(|i| g.element_order(i)).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![1, 2, 4, 4], "cyclic of order 4");

    assert!(matches!(discover_automorphisms(&field(&[-2, 0, 0, 1]), None), Err(Error::NotGalois(_))));
}

/// Class sizes from composing automorphisms as maps on the field, not from the table.
fn brute_force_class_sizes(g: &GaloisGroup) -> Vec<usize> {
    let theta = g.field().generator();
    let images: Vec<_> = g.elements().iter().map(|s| s.image().clone()).collect();
    let compose = |a: usize, b: usize| g.element(b).apply(&g.element(a).apply(&theta));
    let inverse = |a: usize| (0..g.order()).find(|&b| compose(a, b) == theta).unwrap();
    let mut seen = vec![false; g.order()];
    let mut sizes = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut orbit = Vec::new();
        for h in 0..g.order() {
            // h x h^-1 as a map: theta -> h(x(h^-1(theta)))
            let hinv = inverse(h);
            let image = g.element(h).apply(&g.element(x).apply(&g.element(hinv).apply(&theta)));
            let idx = images.iter().position(|i| *i == image).unwrap();
            if !orbit.contains(&idx) {
                orbit.push(idx);
                seen[idx] = true;
            }
        }
        sizes.push(orbit.len());
    }
    sizes.sort_unstable();
    sizes
}

#[test]
fn conjugacy_classes_by_brute_force() {
    for coeffs in [&[1i64, 1, 1][..], &[1, 1, 1, 1, 1], &[-1, -4, -1, 1]] {
        let g = group(coeffs);
        assert!(g.classes().iter().all(|c| c.size() == 1));
    }
    for example in catalog::ALL {
        let g = discover_automorphisms(&example.field().unwrap(), None).unwrap();
        let mut sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, brute_force_class_sizes(&g), "{}", example.name);
        assert_eq!(sizes.iter().sum::<usize>(), g.order());
        for c in g.classes() {
            assert_eq!(c.size() * c.centralizer_size, g.order());
            assert_eq!(c.representative, c.members[0]);
        }
        assert_eq!(g.classes()[0].members, vec![0]);
    }
}

#[test]
fn normal_elements() {
    let g = group(&[1, 1, 1, 1, 1]);
    assert!(is_normal_element(&g, &g.field().generator()));
    assert_eq!(find_normal_element(&g, 4).unwrap(), g.field().generator());
    let g = group(&[-2, 0, 1]);
    let k = g.field();
    assert!(!is_normal_element(&g, &k.generator()));
    assert!(is_normal_element(&g, &k.from_ints(&[1, 1]).unwrap()));
    assert_eq!(find_normal_element(&g, 4).unwrap(), k.from_ints(&[1, 1]).unwrap());
}

#[test]
fn rebasing() {
    // Q(sqrt -3) given by x^2 + 3, rebased at (-1 + sqrt -3)/2
    let g = group(&[3, 0, 1]);
    let a = g.field().element(vec![frac(-1, 2), frac(1, 2)]).unwrap();
    let r = rebase_to_normal(&g, &a).unwrap();
    assert_eq!(r.group.field().defining_poly(), &PolyQ::from_ints(&[1, 1, 1]));
    assert_eq!(r.conjugates.len(), 2);
    assert_eq!(r.conjugates[0], r.alpha);
    let s3 = discover_automorphisms(&catalog::S3.field().unwrap(), None).unwrap();
    let same = rebase_to_normal(&s3, &s3.field().generator()).unwrap();
    assert_eq!(same.group.field().defining_poly(), &catalog::S3.poly());
    // the conjugates are distinct roots of the new polynomial and a basis
    assert!(is_normal_element(&same.group, &same.alpha));
    for c in &same.conjugates {
        assert_eq!(c.min_poly(), catalog::S3.poly());
    }
}

#[test]
fn factorization_examples() {
    let f = PolyQ::from_ints(&[1, 1, 1]);
    assert_eq!(factor_mod_p(&f, 7).unwrap().pattern.factors, vec![(1, 1), (1, 1)]);
    assert_eq!(factor_mod_p(&f, 5).unwrap().pattern.factors, vec![(2, 1)]);
    assert_eq!(factor_mod_p(&f, 3).unwrap().pattern.factors, vec![(1, 2)]);
    assert!(splits_completely(&f, 7).unwrap());
    assert!(!splits_completely(&f, 5).unwrap());
    assert!(matches!(splits_completely(&f, 3), Err(Error::RamifiedOrBad(3))));
    let s3 = catalog::S3.poly();
    assert!(splits_completely(&s3, 31).unwrap());
    let first = primes::small_primes(31).into_iter().find(|&p| splits_completely(&s3, p).unwrap_or(false));
    assert_eq!(first, Some(31));
}

/// Roots of `f` mod `p` by trying every residue.
fn brute_roots(f: &PolyQ, p: u64) -> usize {
    let fp = PolyModP::from_poly_q(f, p).unwrap();
    (0..p).filter(|&r| fp.eval(r) == 0).count()
}

#[test]
fn factor_product_reassembles() {
    for p in primes::small_primes(400) {
        for f in [catalog::S3.poly(), catalog::Q8.poly(), PolyQ::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 1])] {
            let fp = PolyModP::from_poly_q(&f, p).unwrap();
            let fac = factor_mod_p(&f, p).unwrap();
            let product = fac
                .factors
                .iter()
                .fold(PolyModP::one(p), |acc, (g, m)| (0..*m).fold(acc, |acc, _| acc.mul(g)));
            assert_eq!(product, fp, "p = {p}");
            let linear: usize = fac.pattern.factors.iter().filter(|(d, _)| *d == 1).map(|(_, m)| *m).count();
            if fac.pattern.is_squarefree() {
                assert_eq!(linear, brute_roots(&f, p), "p = {p}");
            }
        }
    }
}

#[test]
fn frobenius_examples() {
    let g = group(&[1, 1, 1, 1, 1]);
    assert_eq!(frobenius_class(&g, 11).unwrap(), 0);
    let two = splitting::frobenius_element(&g, 2).unwrap();
    assert_eq!(*g.element(two).image(), g.field().generator().pow(2));
    assert_eq!(g.element_order(two), 4);
    // Frobenius of p is zeta -> zeta^p
    for p in primes::small_primes(500).into_iter().filter(|&p| p != 5) {
        let e = splitting::frobenius_element(&g, p).unwrap();
        assert_eq!(*g.element(e).image(), g.field().generator().pow(p % 5));
    }
    let s3 = discover_automorphisms(&catalog::S3.field().unwrap(), None).unwrap();
    assert_eq!(frobenius_class(&s3, 31).unwrap(), 0);
    assert!(matches!(frobenius_class(&s3, 3), Err(Error::RamifiedOrBad(3))));
}

#[test]
fn three_way_splitting_agreement() {
    for example in catalog::ALL {
        let g = discover_automorphisms(&example.field().unwrap(), None).unwrap();
        let f = g.field().defining_poly().clone();
        for p in primes::prime_iter(2, 10_000).unwrap() {
            if (g.field().discriminant() % BigInt::from(p)).is_zero() || g.is_bad_prime(p) {
                continue;
            }
            let frob_id = frobenius_class(&g, p).unwrap() == 0;
            let split = splits_completely(&f, p).unwrap();
            let pattern = factor_mod_p(&f, p).unwrap().pattern.is_fully_split();
            assert!(frob_id == split && split == pattern, "{} at p = {p}", example.name);
        }
    }
}

#[test]
fn kronecker_symbol_against_euler() {
    for p in primes::small_primes(3000).into_iter().filter(|&p| p > 2) {
        for a in [-7i64, -3, -1, 2, 3, 5, 10] {
            let r = (a.rem_euclid(p as i64)) as u64;
            let euler = splitrec_core::modp::pow(r, (p - 1) / 2, p);
            let expected = if r == 0 { 0 } else if euler == 1 { 1 } else { -1 };
            assert_eq!(kronecker(a, p), expected, "({a}/{p})");
        }
    }
}

#[test]
fn recurrence_examples() {
    let eis = splitrec_core::Recurrence::new(PolyQ::from_ints(&[1, 1, 1]), vec![int(-1), int(1)]).unwrap();
    assert_eq!(eis.detect_period(60), Some((0, 3)));
    let fib = splitrec_core::Recurrence::new(PolyQ::from_ints(&[-1, -1, 1]), vec![int(0), int(1)]).unwrap();
    assert_eq!(fib.detect_period(300), None);
    let cyc5 = families::cyclotomic(5).unwrap();
    assert_eq!(cyc5.closed_form.detect_period(100), Some((0, 5)));
    assert_eq!(primes::prime_iter(2, 10).unwrap().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
    assert_eq!(primes::prime_iter(90, 100).unwrap().collect::<Vec<_>>(), vec![97]);
    assert_eq!(primes::prime_iter(2, 10_000).unwrap().count(), 1229);
}

#[test]
fn family_examples() {
    let q = families::quadratic(&int(-1), &int(1)).unwrap();
    assert_eq!(q.closed_form.char_poly(), &PolyQ::from_ints(&[1, 1, 1]));
    assert_eq!(q.closed_form.initial(), &[int(-1), int(1)]);
    let t1 = families::cubic_shanks(&int(1)).unwrap();
    assert_eq!(t1.closed_form.char_poly(), &PolyQ::from_ints(&[-1, -4, -1, 1]));
    assert_eq!(t1.closed_form.initial(), &[int(1), int(1), int(4)]);
    let c5 = families::cyclotomic(5).unwrap();
    assert_eq!(c5.closed_form.initial(), &[int(-1), int(1), int(0), int(0)]);
    // the q = 3 cyclotomic family is the Eisenstein field again
    assert_eq!(families::cyclotomic(3).unwrap().closed_form, q.closed_form);
    assert!(matches!(families::quadratic(&int(0), &int(1)), Err(Error::FamilyCondition { .. })));
    assert!(matches!(families::cubic_shanks(&int(0)), Err(Error::FamilyCondition { .. })));
}

/// `x_m * a_1 = x_m / x_1 * x_1` with determinants taken over the field.
#[test]
fn cramer_determinants() {
    for g in [group(&[1, 1, 1]), group(&[1, 1, 1, 1, 1]), group(&[-1, -4, -1, 1])] {
        let alpha = g.field().generator();
        let rec = idempotent::solve(&g, &alpha, &IdempotentTarget::Class(0)).unwrap();
        let x1 = idempotent::cramer_determinant(&g, &alpha, 1).unwrap();
        assert!(!x1.is_zero());
        for (m, a_m) in rec.initial().iter().enumerate() {
            let xm = idempotent::cramer_determinant(&g, &alpha, m as u64).unwrap();
            assert_eq!(&x1 * &g.field().rational(a_m.clone()), xm, "m = {m}");
        }
    }
}

#[test]
fn class_recurrences_have_fixed_first_term() {
    for example in catalog::ALL {
        let g = discover_automorphisms(&example.field().unwrap(), None).unwrap();
        let recs = idempotent::solve_all_classes(&g, &g.field().generator()).unwrap();
        for (i, rec) in recs.iter().enumerate() {
            let expected: Rat = if i == 0 { int(1) } else { int(0) };
            assert_eq!(rec.initial()[1], expected, "{} class {i}", example.name);
        }
    }
}
