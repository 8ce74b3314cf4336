//! Properties of the exact linear algebra layer, checked against
//! independent oracles: a column-elimination rank, the kernel dimension
//! filtration, and random recombination of bases.

use cealg::construct;
use cealg::field::{FieldSpec, Scalar};
use cealg::mat::{LinMap, Mat};
use cealg::subspace::{solve_kernel, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

fn f5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

/// Independent rank oracle: greedy column-space elimination, working on
/// columns and pivoting on the last nonzero row. Shares no code with the
/// row-echelon path under test.
fn column_rank(columns: &mut Vec<Vec<Scalar>>) -> usize {
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    'next: for col in columns.drain(..) {
        let mut col = col;
        for basis in &kept {
            let pivot = basis.iter().rposition(|x| !x.is_zero()).expect("kept columns nonzero");
            if col[pivot].is_zero() {
                continue;
            }
            let factor = col[pivot].div(&basis[pivot]).expect("pivot nonzero");
            for (c, b) in col.iter_mut().zip(basis) {
                *c = c.sub(&factor.mul(b));
            }
        }
        if col.iter().all(Scalar::is_zero) {
            continue 'next;
        }
        kept.push(col);
    }
    kept.len()
}

fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.integer(rng.gen_range(0..p) as i64),
        FieldSpec::Rationals => field.integer(rng.gen_range(-5i64..=5)),
    }
}

#[test]
fn kernel_dimension_matches_column_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    for _ in 0..50 {
        let rows = 6;
        let cols = 4;
        let field = if rng.gen_bool(0.5) { f5() } else { FieldSpec::Rationals };
        let entries: Vec<Vec<Scalar>> = (0..rows)
            .map(|_| (0..cols).map(|_| random_scalar(field, &mut rng)).collect())
            .collect();
        let map = LinMap::from_rows(field, entries.clone());
        let kernel = solve_kernel(&map);
        let mut columns: Vec<Vec<Scalar>> = (0..cols)
            .map(|j| (0..rows).map(|i| entries[i][j].clone()).collect())
            .collect();
        let rank = column_rank(&mut columns);
        assert_eq!(kernel.dim(), cols - rank);
        // every kernel vector really maps to zero
        for v in kernel.rows() {
            assert!(map.apply(v).iter().all(Scalar::is_zero));
        }
    }
}

#[test]
fn span_dimension_matches_column_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(92);
    for _ in 0..20 {
        let mats: Vec<Mat> = (0..20)
            .map(|_| Mat::from_fn(4, f5(), |_, _| random_scalar(f5(), &mut rng)))
            .collect();
        let span = Subspace::span(&mats).unwrap();
        let mut columns: Vec<Vec<Scalar>> = mats.iter().map(Mat::to_coords).collect();
        let rank = column_rank(&mut columns);
        assert_eq!(span.dim(), rank);
        for m in &mats {
            assert!(span.contains(m));
        }
    }
}

#[test]
fn echelon_basis_is_canonical_under_recombination() {
    let mut rng = ChaCha8Rng::seed_from_u64(93);
    let ambient = construct::strictly_upper(4, f3());
    for _ in 0..30 {
        let k = rng.gen_range(1..=5);
        let mats: Vec<Mat> = (0..k).map(|_| ambient.random_element(&mut rng)).collect();
        let span = Subspace::span(&mats).unwrap();
        // random invertible recombination of the basis spans the same
        // space, so it must echelonize to the identical matrix list
        let d = span.dim();
        if d == 0 {
            continue;
        }
        let recombined: Vec<Mat> = (0..d)
            .map(|_| {
                let coeffs: Vec<Scalar> =
                    (0..d).map(|_| random_scalar(f3(), &mut rng)).collect();
                span.element_from_coords(&coeffs)
            })
            .collect();
        let back = Subspace::span(&recombined).unwrap();
        if back.dim() == d {
            assert_eq!(back, span);
            assert_eq!(back.basis(), span.basis());
        } else {
            // the random recombination was singular; it must still sit
            // inside the original space
            for m in back.basis() {
                assert!(span.contains(m));
            }
        }
    }
}

#[test]
fn intersection_and_sum_satisfy_the_dimension_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(94);
    let ambient = construct::strictly_upper(4, f3());
    for _ in 0..40 {
        let a = Subspace::span(&[
            ambient.random_element(&mut rng),
            ambient.random_element(&mut rng),
        ])
        .unwrap();
        let b = Subspace::span(&[
            ambient.random_element(&mut rng),
            ambient.random_element(&mut rng),
            ambient.random_element(&mut rng),
        ])
        .unwrap();
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
        for m in meet.basis() {
            assert!(a.contains(m) && b.contains(m));
        }
    }
}

#[test]
fn jordan_preserves_kernel_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(95);
    for _ in 0..25 {
        let n = rng.gen_range(2..=6);
        let field = if rng.gen_bool(0.5) { f5() } else { FieldSpec::Rationals };
        let mut upper = Mat::zero(n, field);
        for i in 0..n {
            for j in (i + 1)..n {
                upper.set(i, j, random_scalar(field, &mut rng));
            }
        }
        let data = cealg::nilpotent_jordan(&upper).unwrap();
        for k in 1..=n {
            assert_eq!(
                kernel_dim(&upper.pow(k)),
                kernel_dim(&data.j.pow(k)),
                "kernel dimensions are conjugation invariants"
            );
        }
    }
}

#[test]
fn nonzero_superdiagonal_forces_a_single_block() {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    for _ in 0..15 {
        let n = 5;
        let q = FieldSpec::Rationals;
        let mut a = Mat::zero(n, q);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = if j == i + 1 {
                    // keep the superdiagonal nonzero
                    q.integer(rng.gen_range(1i64..=5))
                } else {
                    random_scalar(q, &mut rng)
                };
                a.set(i, j, v);
            }
        }
        assert!(!a.pow(4).is_zero(), "A^4 must be nonzero");
        let data = cealg::nilpotent_jordan(&a).unwrap();
        assert_eq!(data.partition, vec![5]);
    }
}

fn kernel_dim(m: &Mat) -> usize {
    let n = m.n();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    solve_kernel(&LinMap::from_rows(m.field(), rows)).dim()
}

#[test]
fn conjugation_preserves_products_and_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(96);
    let algebra = construct::witness_algebra(7, FieldSpec::Rationals).unwrap();
    // random invertible change of basis
    let p = loop {
        let cand = Mat::from_fn(7, FieldSpec::Rationals, |_, _| {
            random_scalar(FieldSpec::Rationals, &mut rng)
        });
        if cand.inverse().is_some() {
            break cand;
        }
    };
    let p_inv = p.inverse().unwrap();
    let conjugated = algebra.space().conjugate(&p).unwrap();
    assert_eq!(conjugated.dim(), algebra.dim());
    // products transport along the conjugation
    for x in algebra.basis().iter().take(3) {
        for y in algebra.basis().iter().take(3) {
            let lhs = p_inv.mul(&x.mul(y)).mul(&p);
            let rhs = p_inv.mul(x).mul(&p).mul(&p_inv.mul(y).mul(&p));
            assert_eq!(lhs, rhs);
        }
    }
    // so closure survives conjugation
    let closed = cealg::MatAlgebra::from_closed_span(conjugated.basis()).unwrap();
    assert_eq!(closed.dim(), algebra.dim());
    // and conjugating back restores the original space
    let back = conjugated.conjugate(&p_inv).unwrap();
    assert_eq!(&back, algebra.space());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn span_is_idempotent_and_membership_closed(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ambient = construct::upper_triangular(3, f3());
        let mats: Vec<Mat> = (0..3).map(|_| ambient.random_element(&mut rng)).collect();
        let span = Subspace::span(&mats).unwrap();
        let again = Subspace::span(span.basis()).unwrap_or_else(|_| Subspace::zero(3, f3()));
        prop_assert_eq!(&again, &span);
        for m in &mats {
            prop_assert!(span.contains(m));
        }
        // coordinates reproduce the element
        for m in span.basis() {
            let coords = span.coordinates_of(m).expect("basis member");
            prop_assert_eq!(&span.element_from_coords(&coords), m);
        }
    }
}
