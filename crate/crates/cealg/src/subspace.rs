//! Echelonized linear subspaces and kernel solving.
//!
//! `Echelon` keeps a list of coordinate rows in reduced row-echelon form
//! at all times, so a subspace has exactly one representation and
//! structural equality decides subspace equality. `Subspace` wraps an
//! echelon of width n^2 and views the rows as n-by-n matrices.

use crate::field::{FieldSpec, Scalar};
use crate::mat::{LinMap, LinalgError, Mat};

/// A canonical basis of a subspace of F^width, maintained in reduced
/// row-echelon form with pivots in strictly increasing column order.
#[derive(Clone, PartialEq, Eq)]
pub struct Echelon {
    width: usize,
    field: FieldSpec,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize, field: FieldSpec) -> Self {
        Echelon { width, field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place, leaving the residual.
    pub fn reduce(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&factor.mul(r));
                }
            }
        }
    }

    /// Inserts a vector, returning true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // Normalize to a leading one and clear the new pivot column above.
        let inv = v[lead].clone().inv().expect("nonzero scalar");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if row[lead].is_zero() {
                continue;
            }
            let factor = row[lead].clone();
            for (r, x) in row.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *r = r.sub(&factor.mul(x));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.rows.insert(at, v);
        self.pivots.insert(at, lead);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Coefficients of `v` over the echelon rows, or None when outside.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w = v.to_vec();
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| w[p].clone()).collect();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero).then_some(coords)
    }
}

/// Canonical kernel basis of a linear map, as an echelon in F^cols.
pub fn solve_kernel(map: &LinMap) -> Echelon {
    let cols = map.cols();
    let field = map.field();
    // Row-reduce a working copy of the map.
    let mut work = Echelon::new(cols, field);
    for i in 0..map.rows() {
        work.insert(map.row(i).to_vec());
    }
    let pivot_cols: Vec<usize> = work.pivots().to_vec();
    let is_pivot = {
        let mut mask = vec![false; cols];
        for &p in &pivot_cols {
            mask[p] = true;
        }
        mask
    };
    let mut kernel = Echelon::new(cols, field);
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &p) in work.rows().iter().zip(&pivot_cols) {
            if !row[free].is_zero() {
                v[p] = row[free].neg();
            }
        }
        kernel.insert(v);
    }
    debug_assert_eq!(kernel.dim(), cols - pivot_cols.len());
    kernel
}

/// An echelonized subspace of the n^2-dimensional space of n-by-n
/// matrices. Basis matrices correspond to canonical echelon rows under
/// row-major flattening.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_n: usize,
    echelon: Echelon,
    basis: Vec<Mat>,
}

impl Subspace {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        Subspace { ambient_n: n, echelon: Echelon::new(n * n, field), basis: Vec::new() }
    }

    /// Canonical span of the given matrices.
    pub fn span(mats: &[Mat]) -> Result<Self, LinalgError> {
        let first = mats.first().ok_or(LinalgError::Empty)?;
        let (n, field) = (first.n(), first.field());
        if mats.iter().any(|m| m.n() != n || m.field() != field) {
            return Err(LinalgError::Mismatch);
        }
        let mut echelon = Echelon::new(n * n, field);
        for m in mats {
            echelon.insert(m.to_coords());
        }
        Ok(Subspace::from_echelon(n, echelon))
    }

    pub(crate) fn from_echelon(n: usize, echelon: Echelon) -> Self {
        assert_eq!(echelon.width(), n * n);
        let basis = echelon
            .rows()
            .iter()
            .map(|r| Mat::from_coords(n, echelon.field(), r.clone()))
            .collect();
        Subspace { ambient_n: n, echelon, basis }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field()
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.n() == self.ambient_n
            && m.field() == self.field()
            && self.echelon.contains(&m.to_coords())
    }

    /// Coefficients of `m` over the canonical basis.
    pub fn coordinates_of(&self, m: &Mat) -> Option<Vec<Scalar>> {
        if m.n() != self.ambient_n || m.field() != self.field() {
            return None;
        }
        self.echelon.coordinates_of(&m.to_coords())
    }

    pub fn element_from_coords(&self, coords: &[Scalar]) -> Mat {
        assert_eq!(coords.len(), self.dim());
        Mat::linear_combination(&self.basis, coords)
            .unwrap_or_else(|| Mat::zero(self.ambient_n, self.field()))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_n != other.ambient_n || self.field() != other.field() {
            return Err(LinalgError::Mismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let mut echelon = self.echelon.clone();
        for row in other.echelon.rows() {
            echelon.insert(row.clone());
        }
        Ok(Subspace::from_echelon(self.ambient_n, echelon))
    }

    /// Intersection via the coefficient kernel of [A | -B].
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let field = self.field();
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient_n, field));
        }
        let width = self.echelon.width();
        let mut stacked = LinMap::zero(width, da + db, field);
        for (j, row) in self.echelon.rows().iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    stacked.set(i, j, x.clone());
                }
            }
        }
        for (j, row) in other.echelon.rows().iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    stacked.set(i, da + j, x.neg());
                }
            }
        }
        let kernel = solve_kernel(&stacked);
        let mut echelon = Echelon::new(width, field);
        for coeffs in kernel.rows() {
            let m = Mat::linear_combination(&self.basis, &coeffs[..da])
                .unwrap_or_else(|| Mat::zero(self.ambient_n, field));
            echelon.insert(m.to_coords());
        }
        Ok(Subspace::from_echelon(self.ambient_n, echelon))
    }

    /// The conjugated subspace span{P^-1 B P : B in basis}.
    pub fn conjugate(&self, p: &Mat) -> Result<Subspace, LinalgError> {
        if p.n() != self.ambient_n || p.field() != self.field() {
            return Err(LinalgError::Mismatch);
        }
        let p_inv = p.inverse().ok_or(LinalgError::Singular)?;
        let mut echelon = Echelon::new(self.echelon.width(), self.field());
        for b in &self.basis {
            echelon.insert(p_inv.mul(b).mul(p).to_coords());
        }
        Ok(Subspace::from_echelon(self.ambient_n, echelon))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}x{} over {})",
            self.dim(),
            self.ambient_n,
            self.ambient_n,
            self.field()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn span_collapses_dependencies() {
        let e12 = Mat::unit(3, f3(), 0, 1);
        let e23 = Mat::unit(3, f3(), 1, 2);
        let two_e12 = e12.scale(&f3().integer(2));
        assert_eq!(Subspace::span(&[e12.clone(), two_e12]).unwrap().dim(), 1);
        let dep = e12.add(&e23);
        let s = Subspace::span(&[e12.clone(), e23.clone(), dep]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&e12));
        assert!(s.contains(&e23));
    }

    #[test]
    fn echelon_is_idempotent() {
        let mats = [
            Mat::from_int_rows(f3(), &[vec![1, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]),
            Mat::from_int_rows(f3(), &[vec![2, 1, 0], vec![1, 0, 2], vec![0, 1, 0]]),
        ];
        let s = Subspace::span(&mats).unwrap();
        let again = Subspace::span(s.basis()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn kernel_examples() {
        let f = FieldSpec::Rationals;
        // [[0,1],[0,0]] kills exactly span{(1,0)}.
        let m = LinMap::from_rows(f, vec![
            vec![f.zero(), f.one()],
            vec![f.zero(), f.zero()],
        ]);
        let k = solve_kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[f.one(), f.zero()]));

        let ident = LinMap::from_rows(f, vec![
            vec![f.one(), f.zero(), f.zero()],
            vec![f.zero(), f.one(), f.zero()],
            vec![f.zero(), f.zero(), f.one()],
        ]);
        assert_eq!(solve_kernel(&ident).dim(), 0);
    }

    #[test]
    fn subspace_lattice_examples() {
        let e12 = Mat::unit(3, f3(), 0, 1);
        let e13 = Mat::unit(3, f3(), 0, 2);
        let a = Subspace::span(std::slice::from_ref(&e12)).unwrap();
        let b = Subspace::span(&[e12.clone(), e13.clone()]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap(), b);

        let c = Subspace::span(std::slice::from_ref(&e13)).unwrap();
        assert_eq!(a.intersect(&c).unwrap().dim(), 0);
    }

    #[test]
    fn mixed_inputs_are_rejected() {
        let f5 = FieldSpec::prime(5).unwrap();
        let a = Mat::unit(3, f3(), 0, 1);
        let b = Mat::unit(3, f5, 0, 1);
        assert_eq!(Subspace::span(&[a.clone(), b]).err(), Some(LinalgError::Mismatch));
        let c = Mat::unit(4, f3(), 0, 1);
        assert_eq!(Subspace::span(&[a.clone(), c]).err(), Some(LinalgError::Mismatch));
        assert_eq!(Subspace::span(&[]).err(), Some(LinalgError::Empty));

        let s3 = Subspace::span(std::slice::from_ref(&a)).unwrap();
        let s4 = Subspace::span(&[Mat::unit(4, f3(), 0, 1)]).unwrap();
        assert_eq!(s3.sum(&s4).err(), Some(LinalgError::Mismatch));
        assert_eq!(s3.intersect(&s4).err(), Some(LinalgError::Mismatch));
        assert_eq!(s3.conjugate(&Mat::identity(4, f3())).err(), Some(LinalgError::Mismatch));
    }

    #[test]
    fn conjugation_by_identity_and_permutation() {
        let e12 = Mat::unit(3, f3(), 0, 1);
        let s = Subspace::span(std::slice::from_ref(&e12)).unwrap();
        let id = Mat::identity(3, f3());
        assert_eq!(s.conjugate(&id).unwrap(), s);

        // Swap of basis vectors 0 and 1 sends E_01 to E_10.
        let mut p = Mat::zero(3, f3());
        p.set(0, 1, f3().one());
        p.set(1, 0, f3().one());
        p.set(2, 2, f3().one());
        let swapped = s.conjugate(&p).unwrap();
        assert!(swapped.contains(&Mat::unit(3, f3(), 1, 0)));
        assert_eq!(swapped.dim(), 1);

        let singular = Mat::zero(3, f3());
        assert_eq!(s.conjugate(&singular), Err(LinalgError::Singular));
    }
}
