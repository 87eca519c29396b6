//! Recurrences for the class indicators `e_rho`.
//!
//! With conjugates `alpha_j = tau_j(alpha)` of a normal element, solve
//! `sum_j z_j tau_l(alpha_j) = v_l` over `L` where `v` is the indicator of the
//! target set, and put `a_m = sum_j z_j alpha_j^m`. These `a_m` are rational and
//! satisfy the recurrence whose characteristic polynomial is `min_poly(alpha)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::galois::{self, GaloisGroup};
use crate::linalg::Matrix;
use crate::number_field::FieldElement;
use crate::rat::Rat;
use crate::recurrence::Recurrence;
use num_traits::{One, Zero};

/// Which elements the indicator is 1 on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdempotentTarget {
    /// The conjugacy class of this element index.
    Class(usize),
    /// A union of conjugacy classes, by element index.
    Subset(Vec<usize>),
}

impl IdempotentTarget {
    /// Sorted element indices, after checking the target against the group.
    pub fn members(&self, group: &GaloisGroup) -> Result<Vec<usize>> {
        let d = group.order();
        match self {
            IdempotentTarget::Class(i) => {
                if *i >= d {
                    return Err(Error::InvalidTarget(format!("element {i} out of range for a group of order {d}")));
                }
                Ok(group.classes()[group.class_of(*i)].members.clone())
            }
            IdempotentTarget::Subset(items) => {
                let mut members = items.clone();
                members.sort_unstable();
                members.dedup();
                if let Some(bad) = members.iter().find(|&&i| i >= d) {
                    return Err(Error::InvalidTarget(format!("element {bad} out of range for a group of order {d}")));
                }
                for &i in &members {
                    for h in 0..d {
                        let conj = group.mult(group.mult(h, i), group.inverse(h));
                        if members.binary_search(&conj).is_err() {
                            return Err(Error::InvalidTarget(format!(
                                "subset is not closed under conjugation: contains {i} but not {conj}"
                            )));
                        }
                    }
                }
                Ok(members)
            }
        }
    }

    /// Same target with class members replaced by the class representative.
    pub fn canonical(&self, group: &GaloisGroup) -> Result<Self> {
        Ok(match self {
            IdempotentTarget::Class(i) => {
                self.members(group)?;
                IdempotentTarget::Class(group.classes()[group.class_of(*i)].representative)
            }
            IdempotentTarget::Subset(_) => IdempotentTarget::Subset(self.members(group)?),
        })
    }
}

/// `tau_j(alpha)` in group order.
pub fn conjugates(group: &GaloisGroup, alpha: &FieldElement) -> Vec<FieldElement> {
    group.elements().iter().map(|s| s.apply(alpha)).collect()
}

fn check_normal(group: &GaloisGroup, alpha: &FieldElement) -> Result<()> {
    if alpha.field() != group.field() {
        return Err(Error::FieldMismatch);
    }
    if !galois::is_normal_element(group, alpha) {
        return Err(Error::SingularSystem);
    }
    Ok(())
}

/// `T[l][j] = tau_l(alpha_j) = alpha_{l*j}`.
fn conjugate_system(group: &GaloisGroup, conj: &[FieldElement]) -> Result<Matrix<FieldElement>> {
    let d = group.order();
    Matrix::from_rows((0..d).map(|l| (0..d).map(|j| conj[group.mult(l, j)].clone()).collect()).collect())
}

/// `beta` with `Tr(tau_i(alpha) beta) = [i = 0]`.
///
/// With `beta_j = tau_j(beta)` the inverse of `T` is `T^-1[j][s] = beta_{s*j}`,
/// so a single rational `d x d` solve replaces elimination over `L`.
pub fn dual_element(group: &GaloisGroup, alpha: &FieldElement) -> Result<FieldElement> {
    check_normal(group, alpha)?;
    let field = group.field();
    let d = group.order();
    let s = field.power_sums(2 * d);
    let conj = conjugates(group, alpha);
    let rows: Vec<Vec<Rat>> = conj
        .iter()
        .map(|c| {
            (0..d)
                .map(|k| c.coords().iter().enumerate().fold(Rat::zero(), |acc, (m, cm)| acc + cm * &s[m + k]))
                .collect()
        })
        .collect();
    let mut rhs = vec![Rat::zero(); d];
    rhs[0] = Rat::one();
    let b = Matrix::from_rows(rows)?.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularSystem,
        other => other,
    })?;
    field.element(b)
}

/// Solves for several targets at once.
pub fn solve_many(group: &GaloisGroup, alpha: &FieldElement, targets: &[IdempotentTarget]) -> Result<Vec<Recurrence>> {
    let beta = dual_element(group, alpha)?;
    let field = group.field();
    let d = group.order();
    let conj = conjugates(group, alpha);
    let beta_conj = conjugates(group, &beta);
    let char_poly = alpha.min_poly();
    targets
        .iter()
        .map(|target| {
            let members = target.members(group)?;
            let z: Vec<FieldElement> = (0..d)
                .map(|j| members.iter().fold(field.zero(), |acc, &s| &acc + &beta_conj[group.mult(s, j)]))
                .collect();
            let mut powers: Vec<FieldElement> = conj.iter().map(|_| field.one()).collect();
            let mut initial = Vec::with_capacity(d);
            for m in 0..d {
                let a_m = z.iter().zip(&powers).fold(field.zero(), |acc, (zj, pj)| &acc + &(zj * pj));
                initial.push(a_m.as_rational().ok_or(Error::NonRationalOutput(m))?);
                for (pj, cj) in powers.iter_mut().zip(&conj) {
                    *pj = &*pj * cj;
                }
            }
            Recurrence::new(char_poly.clone(), initial)
        })
        .collect()
}

/// Same solutions as [`solve_many`] by Gaussian elimination over `L`; slower, kept as a cross-check.
pub fn solve_direct(group: &GaloisGroup, alpha: &FieldElement, target: &IdempotentTarget) -> Result<Vec<FieldElement>> {
    check_normal(group, alpha)?;
    let field = group.field();
    let d = group.order();
    let members = target.members(group)?;
    let conj = conjugates(group, alpha);
    let t = conjugate_system(group, &conj)?;
    let rhs: Vec<FieldElement> =
        (0..d).map(|l| if members.binary_search(&l).is_ok() { field.one() } else { field.zero() }).collect();
    t.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularSystem,
        other => other,
    })
}

pub fn solve(group: &GaloisGroup, alpha: &FieldElement, target: &IdempotentTarget) -> Result<Recurrence> {
    Ok(solve_many(group, alpha, core::slice::from_ref(target))?.remove(0))
}

/// One recurrence per conjugacy class, in the order of `group.classes()`.
pub fn solve_all_classes(group: &GaloisGroup, alpha: &FieldElement) -> Result<Vec<Recurrence>> {
    let targets: Vec<IdempotentTarget> =
        group.classes().iter().map(|c| IdempotentTarget::Class(c.representative)).collect();
    solve_many(group, alpha, &targets)
}

/// `x_m`: the determinant of `T` with its identity row replaced by `alpha_j^m`.
pub fn cramer_determinant(group: &GaloisGroup, alpha: &FieldElement, m: u64) -> Result<FieldElement> {
    let conj = conjugates(group, alpha);
    let t = conjugate_system(group, &conj)?;
    let mut rows = t.rows().to_vec();
    rows[0] = conj.iter().map(|c| c.pow(m)).collect();
    Matrix::from_rows(rows)?.determinant()
}

/// Elements whose order is `k`, as a subset target (closed under conjugation).
pub fn order_subset(group: &GaloisGroup, k: usize) -> IdempotentTarget {
    IdempotentTarget::Subset((0..group.order()).filter(|&i| group.element_order(i) == k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::discover_automorphisms;
    use crate::number_field::{Irreducibility, NumberField};
    use crate::poly::PolyQ;
    use crate::rat::int;

    #[test]
    fn eisenstein_classes() {
        let k = NumberField::new(PolyQ::from_ints(&[1, 1, 1]), Irreducibility::Certify).unwrap();
        let g = discover_automorphisms(&k, None).unwrap();
        let theta = k.generator();
        let recs = solve_all_classes(&g, &theta).unwrap();
        assert_eq!(recs[0].initial(), &[int(-1), int(1)]);
        assert_eq!(recs[1].initial(), &[int(-1), int(0)]);
        let x0 = cramer_determinant(&g, &theta, 0).unwrap();
        let x1 = cramer_determinant(&g, &theta, 1).unwrap();
        assert_eq!(&x1 * &k.rational(int(-1)), x0);
        let all = solve(&g, &theta, &IdempotentTarget::Subset(vec![0, 1])).unwrap();
        assert_eq!(all.initial(), &[int(-2), int(1)]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let k = NumberField::new(PolyQ::from_ints(&[-2, 0, 1]), Irreducibility::Certify).unwrap();
        let g = discover_automorphisms(&k, None).unwrap();
        assert_eq!(solve(&g, &k.generator(), &IdempotentTarget::Class(0)), Err(Error::SingularSystem));
        assert!(matches!(
            solve(&g, &k.from_ints(&[1, 1]).unwrap(), &IdempotentTarget::Class(5)),
            Err(Error::InvalidTarget(_))
        ));
    }
}
