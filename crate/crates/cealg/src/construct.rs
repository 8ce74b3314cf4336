//! Builders for the named algebra families: the classical matrix
//! algebras, the witness family of centrally essential non-commutative
//! subalgebras in size 7 and up, the 4-by-4 centralizer pattern spaces,
//! the regular representation of an exterior algebra, the quaternion
//! group algebra, and the single-block nilpotent Jordan matrix.

use crate::algebra::MatAlgebra;
use crate::ce::SosCertificate;
use crate::field::{FieldSpec, Scalar};
use crate::mat::Mat;
use crate::subspace::Subspace;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("size parameter {got} is below the minimum {min} for this family")]
    SizeTooSmall { min: usize, got: usize },
    #[error("this construction requires characteristic different from 2")]
    CharacteristicTwo,
    #[error("certificates require the rational field")]
    RationalsRequired,
}

/// A nameable construction, sized and ready to build over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// All n-by-n matrices, dimension n^2.
    Full { n: usize },
    /// Upper triangular matrices, dimension n(n+1)/2.
    Upper { n: usize },
    /// Strictly upper triangular matrices, dimension n(n-1)/2.
    StrictUpper { n: usize },
    /// The first-row family in the strictly upper n-by-n matrices that is
    /// centrally essential and non-commutative, n >= 7; dimension n - 1.
    Witness { n: usize },
    /// The hand-labelled 7-by-7 instance of the witness family, dim 6.
    Witness7,
    /// The 4-by-4 centralizer pattern of the two-step shift, dim 4, with
    /// one below-diagonal basis entry.
    CentralizerPattern4,
    /// The center of the 4-by-4 centralizer pattern, dim 2.
    CenterPattern4,
    /// Left regular representation of the exterior algebra of a space of
    /// the given dimension; matrices of size 2^dim_v.
    Exterior { dim_v: usize },
    /// Regular representation of the quaternion group, 8-by-8.
    QuaternionGroup,
    /// The algebra generated by the single-block nilpotent Jordan matrix,
    /// dimension n - 1.
    JordanBlock { n: usize },
}

impl Family {
    /// Builds the family as a multiplication-closed algebra.
    pub fn build(&self, field: FieldSpec) -> Result<MatAlgebra, ConstructError> {
        let at_least_one = |n: usize| {
            if n < 1 {
                Err(ConstructError::SizeTooSmall { min: 1, got: n })
            } else {
                Ok(n)
            }
        };
        match *self {
            Family::Full { n } => Ok(full_matrix(at_least_one(n)?, field)),
            Family::Upper { n } => Ok(upper_triangular(at_least_one(n)?, field)),
            Family::StrictUpper { n } => Ok(strictly_upper(at_least_one(n)?, field)),
            Family::Witness { n } => witness_algebra(n, field),
            Family::Witness7 => Ok(witness_algebra_7(field)),
            Family::CentralizerPattern4 => {
                Ok(MatAlgebra::from_closed_span(centralizer_pattern(field).basis())
                    .expect("pattern space is closed"))
            }
            Family::CenterPattern4 => {
                Ok(MatAlgebra::from_closed_span(center_pattern(field).basis())
                    .expect("pattern space is closed"))
            }
            Family::Exterior { dim_v } => exterior_regular(dim_v, field),
            Family::QuaternionGroup => Ok(quaternion_group_algebra(field)),
            Family::JordanBlock { n } => {
                if n < 1 {
                    return Err(ConstructError::SizeTooSmall { min: 1, got: n });
                }
                if n == 1 {
                    return Ok(MatAlgebra::zero(1, field));
                }
                Ok(MatAlgebra::closure_of(&[jordan_block(n, field)]).expect("nonempty"))
            }
        }
    }
}

/// The full matrix algebra M_n, dimension n^2.
pub fn full_matrix(n: usize, field: FieldSpec) -> MatAlgebra {
    assert!(n >= 1);
    let mut mats = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mats.push(Mat::unit(n, field, i, j));
        }
    }
    MatAlgebra::from_closed_span(&mats).expect("matrix units are closed")
}

/// The upper triangular algebra T_n, dimension n(n+1)/2.
pub fn upper_triangular(n: usize, field: FieldSpec) -> MatAlgebra {
    assert!(n >= 1);
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i..n {
            mats.push(Mat::unit(n, field, i, j));
        }
    }
    MatAlgebra::from_closed_span(&mats).expect("upper units are closed")
}

/// The strictly upper triangular algebra N_n, dimension n(n-1)/2.
pub fn strictly_upper(n: usize, field: FieldSpec) -> MatAlgebra {
    assert!(n >= 1);
    if n == 1 {
        return MatAlgebra::zero(1, field);
    }
    let mut mats = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            mats.push(Mat::unit(n, field, i, j));
        }
    }
    MatAlgebra::from_closed_span(&mats).expect("strict upper units are closed")
}

/// Basis matrix of the witness family for the parameter sitting in row
/// one, column `col` (0-indexed, 1 <= col <= n-1). Row-one entries are
/// echoed into fixed positions of the last column and of row two:
/// the col-1 parameter reappears at (n-3, n-1), the col-2 parameter at
/// (1, 3) and (n-2, n-1), the col-(n-3) parameter at (1, n-1) and the
/// col-(n-2) parameter at (2, n-1).
fn witness_basis_matrix(n: usize, col: usize, field: FieldSpec) -> Mat {
    let mut m = Mat::zero(n, field);
    let one = field.one();
    m.set(0, col, one.clone());
    if col == 1 {
        m.set(n - 3, n - 1, one);
    } else if col == 2 {
        m.set(1, 3, one.clone());
        m.set(n - 2, n - 1, one);
    } else if col == n - 3 {
        m.set(1, n - 1, one);
    } else if col == n - 2 {
        m.set(2, n - 1, one);
    }
    m
}

/// The witness family: for every n >= 7 a non-commutative centrally
/// essential subalgebra of the strictly upper n-by-n matrices, of
/// dimension n - 1 and nilpotence index 3.
pub fn witness_algebra(n: usize, field: FieldSpec) -> Result<MatAlgebra, ConstructError> {
    if n < 7 {
        return Err(ConstructError::SizeTooSmall { min: 7, got: n });
    }
    let mats: Vec<Mat> = (1..n).map(|col| witness_basis_matrix(n, col, field)).collect();
    Ok(MatAlgebra::from_closed_span(&mats).expect("witness family is closed"))
}

/// The 7-by-7 instance of the witness family written out entry by entry,
/// with six parameters a..f.
pub fn witness_algebra_7(field: FieldSpec) -> MatAlgebra {
    let rows = |grid: [[i64; 7]; 7]| -> Mat {
        Mat::from_int_rows(field, &grid.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    };
    // One basis matrix per parameter. Parameter a also sits at (5, 7),
    // b at (2, 4) and (6, 7), d at (2, 7), e at (3, 7) in 1-indexed terms.
    let a = rows([
        [0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    let b = rows([
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    let c = rows([
        [0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    let d = rows([
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    let e = rows([
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    let f = rows([
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    MatAlgebra::from_closed_span(&[a, b, c, d, e, f]).expect("seven by seven family is closed")
}

/// The standard sum-of-squares certificate for the witness family over
/// the rationals: the two leading row-one coordinates are the forms, phi
/// echoes them into the central tail parameters, and the target is the
/// corner matrix unit.
pub fn witness_certificate(n: usize) -> Result<(MatAlgebra, SosCertificate), ConstructError> {
    let field = FieldSpec::Rationals;
    let algebra = witness_algebra(n, field)?;
    let d = algebra.dim();
    let basis = algebra.basis();

    // Forms read the (0,1) and (0,2) entries of an element.
    let form_a: Vec<Scalar> = basis.iter().map(|b| b.get(0, 1).clone()).collect();
    let form_b: Vec<Scalar> = basis.iter().map(|b| b.get(0, 2).clone()).collect();

    // phi sends an element with leading parameters (s, t) to the central
    // family member with the echo parameters at columns n-3 and n-2 set
    // to s and t.
    let echo_a = algebra
        .space()
        .coordinates_of(&witness_basis_matrix(n, n - 3, field))
        .expect("family matrix");
    let echo_b = algebra
        .space()
        .coordinates_of(&witness_basis_matrix(n, n - 2, field))
        .expect("family matrix");
    let mut phi = vec![vec![field.zero(); d]; d];
    for j in 0..d {
        for (i, row) in phi.iter_mut().enumerate() {
            let v = form_a[j].mul(&echo_a[i]).add(&form_b[j].mul(&echo_b[i]));
            row[j] = v;
        }
    }
    let target = Mat::unit(n, field, 0, n - 1);
    let cert = SosCertificate {
        id: format!("witness-sos-n{n}"),
        phi,
        forms: vec![form_a, form_b],
        target,
    };
    Ok((algebra, cert))
}

/// The 4-by-4 pattern space commuting with the two-step shift
/// E_12 + E_23: span{E_12 + E_23, E_13, E_14, E_43}. The last basis
/// element sits below the diagonal.
pub fn centralizer_pattern(field: FieldSpec) -> Subspace {
    let shift = Mat::unit(4, field, 0, 1).add(&Mat::unit(4, field, 1, 2));
    Subspace::span(&[
        shift,
        Mat::unit(4, field, 0, 2),
        Mat::unit(4, field, 0, 3),
        Mat::unit(4, field, 3, 2),
    ])
    .expect("pattern spans")
}

/// The center of the centralizer pattern: span{E_12 + E_23, E_13}.
pub fn center_pattern(field: FieldSpec) -> Subspace {
    let shift = Mat::unit(4, field, 0, 1).add(&Mat::unit(4, field, 1, 2));
    Subspace::span(&[shift, Mat::unit(4, field, 0, 2)]).expect("pattern spans")
}

/// Wedge monomials: all subsets of {0..dim_v} as sorted index tuples in
/// lexicographic order, the empty monomial first.
fn wedge_monomials(dim_v: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << dim_v))
        .map(|mask| (0..dim_v).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort();
    subsets
}

/// Sign of merging two disjoint sorted index tuples: parity of the
/// transpositions needed to sort the concatenation.
fn merge_sign(left: &[usize], right: &[usize]) -> i64 {
    let inversions = left
        .iter()
        .map(|&s| right.iter().filter(|&&t| t < s).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Left regular representation of the exterior algebra of a dim_v-space:
/// a unital algebra of dimension 2^dim_v acting on itself, with the
/// anticommutation signs of wedge multiplication. Characteristic 2 would
/// collapse those signs and is rejected.
pub fn exterior_regular(dim_v: usize, field: FieldSpec) -> Result<MatAlgebra, ConstructError> {
    if dim_v < 1 {
        return Err(ConstructError::SizeTooSmall { min: 1, got: dim_v });
    }
    if field.characteristic() == 2 {
        return Err(ConstructError::CharacteristicTwo);
    }
    let monomials = wedge_monomials(dim_v);
    let size = monomials.len();
    let index_of = |m: &[usize]| monomials.iter().position(|x| x == m).expect("monomial");
    let mut mats = Vec::with_capacity(size);
    for left in &monomials {
        let mut rep = Mat::zero(size, field);
        for right in &monomials {
            if left.iter().any(|i| right.contains(i)) {
                continue; // repeated generator wedges to zero
            }
            let mut merged: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
            let sign = merge_sign(left, right);
            merged.sort_unstable();
            rep.set(index_of(&merged), index_of(right), field.integer(sign));
        }
        mats.push(rep);
    }
    Ok(MatAlgebra::from_closed_span(&mats).expect("regular representation is closed"))
}

/// Quaternion group elements in the fixed order 1, -1, i, -i, j, -j,
/// k, -k; negation flips the low bit.
pub const Q8_ELEMENTS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

/// Multiplication table of the quaternion group: Q8_TABLE[a][b] is the
/// index of the product of elements a and b. A unit test re-derives this
/// table from quaternion arithmetic.
pub const Q8_TABLE: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
];

/// Group algebra of the quaternion group in its regular representation:
/// each group element becomes the 8-by-8 permutation matrix of left
/// multiplication. Unital of dimension 8 over any field.
pub fn quaternion_group_algebra(field: FieldSpec) -> MatAlgebra {
    let mats: Vec<Mat> = (0..8)
        .map(|g| {
            let mut m = Mat::zero(8, field);
            for h in 0..8 {
                m.set(Q8_TABLE[g][h], h, field.one());
            }
            m
        })
        .collect();
    MatAlgebra::from_closed_span(&mats).expect("group representation is closed")
}

/// The single-block nilpotent Jordan matrix E_12 + E_23 + ... of size n.
pub fn jordan_block(n: usize, field: FieldSpec) -> Mat {
    assert!(n >= 1);
    let mut m = Mat::zero(n, field);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, field.one());
    }
    m
}
