//! Exact dense linear algebra over a field (rationals or a number field).

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Field operations needed by Gaussian elimination.
pub trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
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
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
}

pub type MatQ = Matrix<Rat>;

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let n = first.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
        }
        Ok(Matrix { rows })
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.n_rows(), self.n_cols());
        Matrix { rows: (0..c).map(|j| (0..r).map(|i| self.rows[i][j].clone()).collect()).collect() }
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.n_cols() || v.is_empty() {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector of {}", self.n_cols(), v.len())));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(v).fold(v[0].zero_like(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect())
    }

    fn require_square(&self) -> Result<usize> {
        let n = self.n_rows();
        if n == 0 || self.n_cols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", n, self.n_cols())));
        }
        Ok(n)
    }

    pub fn determinant(&self) -> Result<T> {
        let n = self.require_square()?;
        let mut a = self.rows.clone();
        let mut det = a[0][0].one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(det.zero_like());
            };
            if piv != col {
                a.swap(piv, col);
                det = det.zero_like().sub(&det);
            }
            let pivot = a[col][col].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().ok_or(Error::DivisionByZero)?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].mul(&inv);
                for c in col..n {
                    let t = factor.mul(&a[col][c]);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
        Ok(det)
    }

    /// Solves `self * X = B` for every right-hand side column in `rhs`.
    pub fn solve_many(&self, rhs: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
        let n = self.require_square()?;
        if rhs.iter().any(|b| b.len() != n) {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let k = rhs.len();
        let mut a: Vec<Vec<T>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend(rhs.iter().map(|b| b[i].clone()));
                r
            })
            .collect();
        let width = n + k;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(piv, col);
            let inv = a[col][col].inv().ok_or(Error::SingularMatrix)?;
            for c in col..width {
                a[col][c] = a[col][c].mul(&inv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..width {
                    let t = factor.mul(&a[col][c]);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
        Ok((0..k).map(|j| (0..n).map(|i| a[i][n + j].clone()).collect()).collect())
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        Ok(self.solve_many(&[rhs.to_vec()])?.pop().unwrap_or_default())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let one = self.rows[0][0].one_like();
        let zero = one.zero_like();
        let cols: Vec<Vec<T>> =
            (0..n).map(|j| (0..n).map(|i| if i == j { one.clone() } else { zero.clone() }).collect()).collect();
        let inv_cols = self.solve_many(&cols)?;
        Ok(Matrix { rows: inv_cols }.transpose())
    }
}

/// Writes `target` as a combination of `vectors` (assumed independent), if possible.
pub fn express_in_span(vectors: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = vectors.len();
    let n = target.len();
    // augmented n x (k+1) system, reduced row echelon
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..=k {
        let Some(piv) = (r..n).find(|&i| !Zero::is_zero(&a[i][col])) else { continue };
        if col == k {
            return None;
        }
        a.swap(piv, r);
        let inv = a[r][col].recip();
        for c in col..=k {
            a[r][c] = &a[r][c] * &inv;
        }
        for i in 0..n {
            if i != r && !Zero::is_zero(&a[i][col]) {
                let f = a[i][col].clone();
                for c in col..=k {
                    let t = &f * &a[r][c];
                    a[i][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == n {
            break;
        }
    }
    let mut sol = alloc::vec![Rat::zero(); k];
    for (row, &col) in pivot_cols.iter().enumerate() {
        if col < k {
            sol[col] = a[row][k].clone();
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> MatQ {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.determinant().unwrap(), int(-2));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.rows()[0], vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).solve(&[int(1), int(1)]), Err(Error::SingularMatrix));
    }

    #[test]
    fn span_membership() {
        let v = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        assert_eq!(express_in_span(&v, &[int(2), int(3), int(0)]), Some(vec![int(2), int(3)]));
        assert_eq!(express_in_span(&v, &[int(2), int(3), int(1)]), None);
    }
}
