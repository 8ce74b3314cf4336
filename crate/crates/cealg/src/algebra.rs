//! Matrix algebras: multiplication-closed subspaces with the structure
//! queries the rest of the crate is built on: center, centralizer,
//! power chain, nil-index, commutativity, scalar-plus-radical splitting
//! and idempotent enumeration.

use crate::field::{FieldSpec, Scalar};
use crate::mat::{LinMap, LinalgError, Mat};
use crate::subspace::{solve_kernel, Echelon, Subspace};
use rand::Rng;
use std::sync::OnceLock;
use thiserror::Error;

/// Default cap on exhaustive element enumeration, 3^12 elements.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 531_441;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("basis product falls outside the span, the space is not closed")]
    ClosureViolation { left: Box<Mat>, right: Box<Mat> },
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("enumeration needs {needed:?} elements, over the budget of {budget}")]
    BudgetExceeded { needed: Option<u64>, budget: u64 },
    #[error("found a non-nilpotent element")]
    NonNilpotentElement(Box<Mat>),
    #[error("algebra does not contain the identity matrix")]
    NotUnital,
    #[error("a basis element has a non-constant diagonal")]
    NonConstantDiagonal(Box<Mat>),
    #[error("the zero-diagonal part is not closed under multiplication")]
    RadicalNotClosed,
    #[error("the zero-diagonal part is not nilpotent")]
    RadicalNotNilpotent,
    #[error("identity can only be adjoined to a nilpotent algebra")]
    AdjoinRequiresNilpotent,
    #[error("at least one generator is required")]
    Empty,
}

/// A multiplication-closed subspace of n-by-n matrices. Closure holds by
/// construction; the center is computed lazily and cached write-once.
pub struct MatAlgebra {
    space: Subspace,
    contains_identity: bool,
    center: OnceLock<Subspace>,
}

impl Clone for MatAlgebra {
    fn clone(&self) -> Self {
        let center = OnceLock::new();
        if let Some(z) = self.center.get() {
            let _ = center.set(z.clone());
        }
        MatAlgebra { space: self.space.clone(), contains_identity: self.contains_identity, center }
    }
}

impl PartialEq for MatAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl Eq for MatAlgebra {}

impl std::fmt::Debug for MatAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MatAlgebra(dim {} in {}x{} over {}{})",
            self.dim(),
            self.ambient_n(),
            self.ambient_n(),
            self.field(),
            if self.contains_identity { ", unital" } else { "" }
        )
    }
}

impl MatAlgebra {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        MatAlgebra::from_space(Subspace::zero(n, field))
    }

    fn from_space(space: Subspace) -> Self {
        let contains_identity = space.contains(&Mat::identity(space.ambient_n(), space.field()));
        MatAlgebra { space, contains_identity, center: OnceLock::new() }
    }

    /// The smallest multiplication-closed subspace containing the
    /// generators: linear combinations and products, no identity adjoined.
    pub fn closure_of(generators: &[Mat]) -> Result<Self, AlgebraError> {
        let first = generators.first().ok_or(AlgebraError::Empty)?;
        let (n, field) = (first.n(), first.field());
        if generators.iter().any(|g| g.n() != n || g.field() != field) {
            return Err(LinalgError::Mismatch.into());
        }
        let mut echelon = Echelon::new(n * n, field);
        let mut spanning: Vec<Mat> = Vec::new();
        let mut fresh: Vec<Mat> = Vec::new();
        for g in generators {
            if echelon.insert(g.to_coords()) {
                spanning.push(g.clone());
                fresh.push(g.clone());
            }
        }
        while !fresh.is_empty() {
            let mut next = Vec::new();
            for x in &fresh {
                for y in &spanning {
                    for prod in [x.mul(y), y.mul(x)] {
                        if echelon.insert(prod.to_coords()) {
                            next.push(prod);
                        }
                    }
                }
            }
            spanning.extend(next.iter().cloned());
            fresh = next;
        }
        let algebra = MatAlgebra::from_space(Subspace::from_echelon(n, echelon));
        debug_assert!(algebra.verify_closed().is_ok());
        Ok(algebra)
    }

    /// Spans the given matrices and verifies closure exhaustively,
    /// rejecting the input when some basis product escapes the span.
    pub fn from_closed_span(mats: &[Mat]) -> Result<Self, AlgebraError> {
        let space = Subspace::span(mats)?;
        let algebra = MatAlgebra::from_space(space);
        algebra.verify_closed()?;
        Ok(algebra)
    }

    /// Checks every pairwise basis product for membership.
    pub fn verify_closed(&self) -> Result<(), AlgebraError> {
        for x in self.basis() {
            for y in self.basis() {
                if !self.space.contains(&x.mul(y)) {
                    return Err(AlgebraError::ClosureViolation {
                        left: Box::new(x.clone()),
                        right: Box::new(y.clone()),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[Mat] {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_n(&self) -> usize {
        self.space.ambient_n()
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.space.contains(m)
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// Unital in the sense used throughout: the ambient identity matrix
    /// belongs to the algebra.
    pub fn is_unital(&self) -> bool {
        self.contains_identity
    }

    /// Number of elements over a finite field, None on overflow or over
    /// the rationals.
    pub fn element_count(&self) -> Option<u64> {
        let p = self.field().order()?;
        let mut acc: u64 = 1;
        for _ in 0..self.dim() {
            acc = acc.checked_mul(p)?;
        }
        Some(acc)
    }

    /// The center {x in A : xb = bx for every basis b}, cached after the
    /// first computation.
    pub fn center(&self) -> &Subspace {
        self.center.get_or_init(|| self.center_fresh())
    }

    /// Uncached center computation; also the re-verification path.
    pub fn center_fresh(&self) -> Subspace {
        let d = self.dim();
        let n = self.ambient_n();
        let field = self.field();
        if d == 0 {
            return Subspace::zero(n, field);
        }
        // Unknown x = sum c_j B_j; constraints x B_i - B_i x = 0 stacked
        // over all basis elements B_i.
        let mut map = LinMap::zero(n * n * d, d, field);
        for (i, b_i) in self.basis().iter().enumerate() {
            for (j, b_j) in self.basis().iter().enumerate() {
                let comm = b_j.mul(b_i).sub(&b_i.mul(b_j));
                for (idx, val) in comm.to_coords().into_iter().enumerate() {
                    if !val.is_zero() {
                        map.set(i * n * n + idx, j, val);
                    }
                }
            }
        }
        let kernel = solve_kernel(&map);
        let mut echelon = Echelon::new(n * n, field);
        for coeffs in kernel.rows() {
            let m = Mat::linear_combination(self.basis(), coeffs)
                .unwrap_or_else(|| Mat::zero(n, field));
            echelon.insert(m.to_coords());
        }
        let center = Subspace::from_echelon(n, echelon);
        // The center of a ring is a subring: re-check centrality and
        // closure independently of the solver.
        for z in center.basis() {
            for b in self.basis() {
                assert!(z.commutes_with(b), "center element must commute with the whole basis");
            }
        }
        for z1 in center.basis() {
            for z2 in center.basis() {
                assert!(center.contains(&z1.mul(z2)), "center must be closed under products");
            }
        }
        center
    }

    /// First non-commuting basis pair, scanning in canonical order.
    pub fn commutativity(&self) -> Commutativity {
        let basis = self.basis();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if !basis[i].commutes_with(&basis[j]) {
                    return Commutativity::NonCommutative {
                        left: basis[i].clone(),
                        right: basis[j].clone(),
                    };
                }
            }
        }
        Commutativity::Commutative
    }

    pub fn is_commutative(&self) -> bool {
        matches!(self.commutativity(), Commutativity::Commutative)
    }

    /// Descending chain A, A^2, A^3, ... computed as spans of basis
    /// products, stopping at zero or at stabilization.
    pub fn power_chain(&self) -> PowerChain {
        let mut powers = vec![self.space.clone()];
        loop {
            let prev = powers.last().unwrap();
            if prev.dim() == 0 {
                let index = powers.len();
                return PowerChain { powers, nilpotence_index: Some(index) };
            }
            let mut echelon = Echelon::new(self.ambient_n() * self.ambient_n(), self.field());
            for x in prev.basis() {
                for y in self.basis() {
                    echelon.insert(x.mul(y).to_coords());
                }
            }
            let next = Subspace::from_echelon(self.ambient_n(), echelon);
            if next.dim() == prev.dim() {
                return PowerChain { powers, nilpotence_index: None };
            }
            debug_assert!(next.dim() < prev.dim());
            powers.push(next);
        }
    }

    /// Maximal nilpotence index over the elements. Exhaustive enumeration
    /// gives the exact nil-index; sampling gives a certified lower bound.
    pub fn nil_index(
        &self,
        strategy: NilIndexStrategy,
        budget: u64,
    ) -> Result<NilIndexReport, AlgebraError> {
        match strategy {
            NilIndexStrategy::Exhaustive => {
                let mut max = 1;
                for elem in self.elements_within(budget)? {
                    let idx = elem
                        .nilpotence_index()
                        .ok_or_else(|| AlgebraError::NonNilpotentElement(Box::new(elem.clone())))?;
                    max = max.max(idx);
                }
                if let Some(chain_index) = self.power_chain().nilpotence_index {
                    debug_assert!(max <= chain_index);
                }
                Ok(NilIndexReport { value: max, certain: true })
            }
            NilIndexStrategy::Randomized { samples, seed } => {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut max = 1;
                for _ in 0..samples {
                    let elem = self.random_element(&mut rng);
                    let idx = elem
                        .nilpotence_index()
                        .ok_or_else(|| AlgebraError::NonNilpotentElement(Box::new(elem.clone())))?;
                    max = max.max(idx);
                }
                Ok(NilIndexReport { value: max, certain: false })
            }
        }
    }

    /// Splits a unital constant-diagonal algebra as scalars plus the
    /// zero-diagonal nilpotent ideal. This is the supported local shape;
    /// anything else is rejected with the reason.
    pub fn local_split(&self) -> Result<LocalSplit, AlgebraError> {
        if !self.contains_identity {
            return Err(AlgebraError::NotUnital);
        }
        if let Some(bad) = self.basis().iter().find(|b| !b.has_constant_diagonal()) {
            return Err(AlgebraError::NonConstantDiagonal(Box::new(bad.clone())));
        }
        let d = self.dim();
        let field = self.field();
        // lambda reads the constant diagonal; the radical is its kernel.
        let lambda_row: Vec<Scalar> = self.basis().iter().map(|b| b.get(0, 0).clone()).collect();
        let map = LinMap::from_rows(field, vec![lambda_row]);
        let kernel = solve_kernel(&map);
        let radical_mats: Vec<Mat> = kernel
            .rows()
            .iter()
            .map(|coeffs| {
                Mat::linear_combination(self.basis(), coeffs)
                    .unwrap_or_else(|| Mat::zero(self.ambient_n(), field))
            })
            .collect();
        let radical_space = if radical_mats.is_empty() {
            Subspace::zero(self.ambient_n(), field)
        } else {
            Subspace::span(&radical_mats)?
        };
        let radical = MatAlgebra::from_space(radical_space);
        if radical.verify_closed().is_err() {
            return Err(AlgebraError::RadicalNotClosed);
        }
        if radical.power_chain().nilpotence_index.is_none() {
            return Err(AlgebraError::RadicalNotNilpotent);
        }
        let scalar_part =
            Subspace::span(&[Mat::identity(self.ambient_n(), field)]).expect("identity spans");
        debug_assert_eq!(radical.dim() + 1, d);
        debug_assert_eq!(scalar_part.sum(radical.space()).unwrap(), self.space);
        Ok(LocalSplit { scalar_part, radical })
    }

    /// Adjoins the ambient identity to a nilpotent algebra, producing the
    /// unital algebra scalars + N.
    pub fn adjoin_identity(&self) -> Result<MatAlgebra, AlgebraError> {
        if self.power_chain().nilpotence_index.is_none() {
            return Err(AlgebraError::AdjoinRequiresNilpotent);
        }
        let mut mats = vec![Mat::identity(self.ambient_n(), self.field())];
        mats.extend(self.basis().iter().cloned());
        let algebra = MatAlgebra::from_space(Subspace::span(&mats)?);
        debug_assert!(algebra.verify_closed().is_ok());
        debug_assert!(algebra.contains_identity);
        Ok(algebra)
    }

    /// Exactly the elements e with e^2 = e, by exhaustive enumeration.
    pub fn idempotents(&self, budget: u64) -> Result<Vec<Mat>, AlgebraError> {
        let mut out = Vec::new();
        for elem in self.elements_within(budget)? {
            if elem.mul(&elem) == elem {
                out.push(elem);
            }
        }
        Ok(out)
    }

    /// Deterministic odometer enumeration of all elements over a finite
    /// field: the last basis coordinate varies fastest.
    pub fn elements(&self) -> Result<ElementIter<'_>, AlgebraError> {
        if !self.field().is_finite() {
            return Err(AlgebraError::InfiniteField);
        }
        let p = self.field().order().expect("finite field");
        Ok(ElementIter {
            basis: self.basis(),
            p,
            digits: vec![0; self.dim()],
            current: Mat::zero(self.ambient_n(), self.field()),
            started: false,
            done: false,
        })
    }

    /// Element iterator guarded by an enumeration budget.
    pub fn elements_within(&self, budget: u64) -> Result<ElementIter<'_>, AlgebraError> {
        if !self.field().is_finite() {
            return Err(AlgebraError::InfiniteField);
        }
        match self.element_count() {
            Some(count) if count <= budget => self.elements(),
            needed => Err(AlgebraError::BudgetExceeded { needed, budget }),
        }
    }

    /// Uniform random element over a finite field; over the rationals the
    /// coordinates are drawn from the small integer pool -3..=3.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat {
        let coords: Vec<Scalar> = match self.field() {
            FieldSpec::Prime(p) => {
                (0..self.dim()).map(|_| self.field().integer(rng.gen_range(0..p) as i64)).collect()
            }
            FieldSpec::Rationals => {
                (0..self.dim()).map(|_| self.field().integer(rng.gen_range(-3i64..=3))).collect()
            }
        };
        self.space.element_from_coords(&coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commutativity {
    Commutative,
    NonCommutative { left: Mat, right: Mat },
}

#[derive(Clone, Debug)]
pub struct PowerChain {
    /// powers[k] is the span of all (k+1)-fold products.
    pub powers: Vec<Subspace>,
    /// Least k with A^k = 0, when the chain reaches zero.
    pub nilpotence_index: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilIndexStrategy {
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilIndexReport {
    pub value: usize,
    /// True only for exhaustive enumeration; sampling yields lower bounds.
    pub certain: bool,
}

#[derive(Clone, Debug)]
pub struct LocalSplit {
    /// The line spanned by the identity matrix.
    pub scalar_part: Subspace,
    /// The zero-diagonal ideal, verified nilpotent.
    pub radical: MatAlgebra,
}

impl LocalSplit {
    /// The constant diagonal of a member matrix.
    pub fn lambda(&self, m: &Mat) -> Scalar {
        m.get(0, 0).clone()
    }
}

/// Centralizer of `m` inside an arbitrary subspace: {x : xm = mx}. The
/// ambient space need not be an algebra.
pub fn centralizer(m: &Mat, within: &Subspace) -> Subspace {
    let d = within.dim();
    let n = within.ambient_n();
    let field = within.field();
    assert_eq!(m.n(), n);
    assert_eq!(m.field(), field);
    if d == 0 {
        return Subspace::zero(n, field);
    }
    let mut map = LinMap::zero(n * n, d, field);
    for (j, b_j) in within.basis().iter().enumerate() {
        let comm = b_j.mul(m).sub(&m.mul(b_j));
        for (idx, val) in comm.to_coords().into_iter().enumerate() {
            if !val.is_zero() {
                map.set(idx, j, val);
            }
        }
    }
    let kernel = solve_kernel(&map);
    let mut echelon = Echelon::new(n * n, field);
    for coeffs in kernel.rows() {
        let x = Mat::linear_combination(within.basis(), coeffs)
            .unwrap_or_else(|| Mat::zero(n, field));
        echelon.insert(x.to_coords());
    }
    Subspace::from_echelon(n, echelon)
}

/// Odometer over all coordinate tuples. Adding a basis matrix p times
/// cancels over F_p, so digit wrap-around is a single addition.
pub struct ElementIter<'a> {
    basis: &'a [Mat],
    p: u64,
    digits: Vec<u64>,
    current: Mat,
    started: bool,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.digits[i] += 1;
            self.current = self.current.add(&self.basis[i]);
            if self.digits[i] < self.p {
                break;
            }
            self.digits[i] = 0;
        }
        Some(self.current.clone())
    }
}
