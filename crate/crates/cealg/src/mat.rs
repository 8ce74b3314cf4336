//! Dense exact matrices: the square carrier type for algebra elements and
//! a rectangular matrix used to express linear maps on coordinate spaces.

use crate::field::{FieldSpec, Scalar};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrices live over different fields or dimensions")]
    Mismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("empty input where at least one matrix is required")]
    Empty,
}

/// A dense n-by-n matrix over one field. Entries are stored row-major;
/// the (i, j) entry flattens to coordinate `i * n + j`, and that
/// convention is shared with `Subspace` and the file format.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Mat { n, field, entries: vec![field.zero(); n * n] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Mat::zero(n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// The matrix unit with a single 1 in row `i`, column `j` (0-indexed).
    pub fn unit(n: usize, field: FieldSpec, i: usize, j: usize) -> Self {
        let mut m = Mat::zero(n, field);
        m.set(i, j, field.one());
        m
    }

    pub fn from_fn(n: usize, field: FieldSpec, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zero(n, field);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from integer rows, mostly for fixtures and tests.
    pub fn from_int_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square grid");
        Mat::from_fn(n, field, |i, j| field.integer(rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry from a different field");
        self.entries[i * self.n + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.n, self.field), (other.n, other.field));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat { n: self.n, field: self.field, entries }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.n, self.field), (other.n, other.field));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat { n: self.n, field: self.field, entries }
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(Scalar::neg).collect();
        Mat { n: self.n, field: self.field, entries }
    }

    pub fn scale(&self, by: &Scalar) -> Mat {
        assert_eq!(by.field(), self.field);
        let entries = self.entries.iter().map(|e| e.mul(by)).collect();
        Mat { n: self.n, field: self.field, entries }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!((self.n, self.field), (other.n, other.field));
        let n = self.n;
        let mut out = Mat::zero(n, self.field);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Mat {
        let mut acc = Mat::identity(self.n, self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutes_with(&self, other: &Mat) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// True when some power up to n vanishes (the index of a nilpotent
    /// n-by-n matrix never exceeds n).
    pub fn is_nilpotent(&self) -> bool {
        let mut acc = self.clone();
        for _ in 0..self.n {
            if acc.is_zero() {
                return true;
            }
            acc = acc.mul(self);
        }
        acc.is_zero()
    }

    /// Least k >= 1 with self^k = 0, or None if not nilpotent. A nilpotent
    /// n-by-n matrix has index at most n, so the scan is bounded.
    pub fn nilpotence_index(&self) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=self.n {
            if acc.is_zero() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    pub fn has_constant_diagonal(&self) -> bool {
        (1..self.n).all(|i| self.get(i, i) == self.get(0, 0))
    }

    /// Gauss-Jordan inverse; None for singular input.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut work = self.clone();
        let mut inv = Mat::identity(n, self.field);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    work.entries.swap(col * n + j, pivot * n + j);
                    inv.entries.swap(col * n + j, pivot * n + j);
                }
            }
            let lead = work.get(col, col).clone();
            let lead_inv = lead.inv().ok()?;
            for j in 0..n {
                work.set(col, j, work.get(col, j).mul(&lead_inv));
                inv.set(col, j, inv.get(col, j).mul(&lead_inv));
            }
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for j in 0..n {
                    let w = work.get(r, j).sub(&factor.mul(work.get(col, j)));
                    work.set(r, j, w);
                    let v = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Row-major flattening into a length n^2 coordinate vector.
    pub fn to_coords(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn from_coords(n: usize, field: FieldSpec, coords: Vec<Scalar>) -> Self {
        assert_eq!(coords.len(), n * n);
        assert!(coords.iter().all(|c| c.field() == field));
        Mat { n, field, entries: coords }
    }

    /// Sum of `coeffs[i] * mats[i]`.
    pub fn linear_combination(mats: &[Mat], coeffs: &[Scalar]) -> Option<Mat> {
        let first = mats.first()?;
        let mut acc = Mat::zero(first.n, first.field);
        for (m, c) in mats.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        Some(acc)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({}x{} over {})\n{}", self.n, self.n, self.field, self)
    }
}

/// A rectangular matrix over one field, used as an explicit linear map
/// between coordinate spaces (kernel computations).
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl LinMap {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Self {
        LinMap { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols));
        let entries = rows.into_iter().flatten().collect::<Vec<_>>();
        assert!(entries.iter().all(|e: &Scalar| e.field() == field));
        LinMap { rows: nrows, cols: ncols, field, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn unit_products() {
        let e12 = Mat::unit(3, f3(), 0, 1);
        let e23 = Mat::unit(3, f3(), 1, 2);
        assert_eq!(e12.mul(&e23), Mat::unit(3, f3(), 0, 2));
        assert!(e23.mul(&e12).is_zero());
    }

    #[test]
    fn shift_matrix_powers() {
        let a = Mat::unit(3, f3(), 0, 1).add(&Mat::unit(3, f3(), 1, 2));
        assert_eq!(a.pow(2), Mat::unit(3, f3(), 0, 2));
        assert!(a.pow(3).is_zero());
        assert_eq!(a.nilpotence_index(), Some(3));
        assert!(a.is_nilpotent());
        assert!(!Mat::identity(3, f3()).is_nilpotent());
        assert_eq!(Mat::identity(3, f3()).nilpotence_index(), None);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_int_rows(FieldSpec::Rationals, &[
            vec![2, 1, 0],
            vec![0, 1, -1],
            vec![1, 0, 3],
        ]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), Mat::identity(3, FieldSpec::Rationals));
        assert_eq!(inv.mul(&m), Mat::identity(3, FieldSpec::Rationals));

        let singular = Mat::from_int_rows(f3(), &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn zero_matrix_nilpotence() {
        let z = Mat::zero(2, f3());
        assert_eq!(z.nilpotence_index(), Some(1));
    }
}
